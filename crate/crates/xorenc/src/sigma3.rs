//! Depth-3 structures (an OR of CNFs) and the conversions between them and
//! CNF encodings: branch-per-guess-assignment expansion in one direction,
//! guard-literal merging in the other.

use std::collections::{BTreeMap, BTreeSet};

use crate::boolfn::BoolFn;
use crate::cnf::{Clause, Cnf, Encoding, Literal};
use crate::error::{Error, ParseError, ParseErrorKind};

/// Expansion materializes 2^s branches; reject anything past this.
pub const MAX_EXPANSION_S: usize = 20;

/// An OR of CNFs with no clause sharing between branches.
///
/// Size metric is the gate count excluding the output OR: one AND gate per
/// branch plus one OR gate per clause occurrence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sigma3Formula {
    n: usize,
    branches: Vec<Cnf>,
}

impl Sigma3Formula {
    pub fn new(n: usize, branches: Vec<Cnf>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::MalformedSigma3 {
                reason: "no input variables".into(),
            });
        }
        if branches.is_empty() {
            return Err(Error::MalformedSigma3 {
                reason: "empty branch list".into(),
            });
        }
        for branch in &branches {
            if branch.n_vars() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: branch.n_vars(),
                });
            }
        }
        Ok(Sigma3Formula { n, branches })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Branch count (the t of a t-branch structure).
    pub fn t(&self) -> usize {
        self.branches.len()
    }

    pub fn branches(&self) -> &[Cnf] {
        &self.branches
    }

    /// Total clause occurrences across branches (the r of the size metric).
    pub fn clause_gates(&self) -> usize {
        self.branches.iter().map(Cnf::len).sum()
    }

    pub fn size(&self) -> usize {
        self.t() + self.clause_gates()
    }

    pub fn eval_index(&self, x: u32) -> bool {
        self.branches.iter().any(|b| b.eval_index(x))
    }

    pub fn to_boolfn(&self) -> Result<BoolFn, Error> {
        BoolFn::from_fn(self.n, |x| self.eval_index(x))
    }

    pub fn computes(&self, f: &BoolFn) -> Result<bool, Error> {
        if f.n() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: f.n(),
            });
        }
        Ok(self.to_boolfn()? == *f)
    }

    /// Serializes as `sigma3 n=<n> t=<t>`, branches separated by `---` lines,
    /// one clause per line as signed integers; the empty clause is a bare `0`.
    pub fn to_text(&self) -> String {
        let mut out = format!("sigma3 n={} t={}\n", self.n, self.t());
        for (i, branch) in self.branches.iter().enumerate() {
            if i > 0 {
                out.push_str("---\n");
            }
            for clause in branch.clauses() {
                if clause.is_empty() {
                    out.push_str("0\n");
                } else {
                    out.push_str(&clause.to_string());
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let fail = |line: usize, kind: ParseErrorKind| ParseError { line, kind };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (line0, header) = lines
            .next()
            .ok_or_else(|| fail(1, ParseErrorKind::Eof("missing header".into())))?;
        let (n, t) = parse_sigma3_header(header).map_err(|kind| fail(line0 + 1, kind))?;
        if n == 0 || t == 0 {
            return Err(fail(
                line0 + 1,
                ParseErrorKind::Header("n and t must be positive".into()),
            ));
        }
        let mut branches = vec![Cnf::new(n)];
        for (line_no, line) in lines {
            let line = line.trim();
            if line == "---" {
                branches.push(Cnf::new(n));
                continue;
            }
            let clause = parse_clause_line(line, n).map_err(|kind| fail(line_no + 1, kind))?;
            branches
                .last_mut()
                .expect("at least one branch open")
                .add(clause)
                .expect("literal range already checked");
        }
        if branches.len() != t {
            return Err(fail(
                text.lines().count(),
                ParseErrorKind::CountMismatch {
                    what: "branches",
                    declared: t,
                    found: branches.len(),
                },
            ));
        }
        Ok(Sigma3Formula { n, branches })
    }
}

/// An OR of CNFs that may share clauses: branches are index-sets into a pool
/// of distinct clauses. Size metric = branch count + pool size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sigma3Circuit {
    n: usize,
    pool: Vec<Clause>,
    branches: Vec<BTreeSet<usize>>,
}

impl Sigma3Circuit {
    pub fn new(
        n: usize,
        pool: Vec<Clause>,
        branches: Vec<BTreeSet<usize>>,
    ) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::MalformedSigma3 {
                reason: "no input variables".into(),
            });
        }
        if branches.is_empty() {
            return Err(Error::MalformedSigma3 {
                reason: "empty branch list".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for clause in &pool {
            if clause.max_var() as usize > n {
                return Err(Error::VarOutOfRange {
                    var: clause.max_var(),
                    limit: n,
                });
            }
            if !seen.insert(clause.clone()) {
                return Err(Error::MalformedSigma3 {
                    reason: "duplicate clause in pool".into(),
                });
            }
        }
        for branch in &branches {
            if let Some(&idx) = branch.iter().find(|&&i| i >= pool.len()) {
                return Err(Error::MalformedSigma3 {
                    reason: format!("branch references pool index {idx} out of range"),
                });
            }
        }
        Ok(Sigma3Circuit { n, pool, branches })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.branches.len()
    }

    pub fn pool(&self) -> &[Clause] {
        &self.pool
    }

    pub fn branches(&self) -> &[BTreeSet<usize>] {
        &self.branches
    }

    pub fn size(&self) -> usize {
        self.t() + self.pool.len()
    }

    /// Materializes one branch as a standalone CNF.
    pub fn branch_cnf(&self, i: usize) -> Cnf {
        let mut cnf = Cnf::new(self.n);
        for &idx in &self.branches[i] {
            cnf.add(self.pool[idx].clone())
                .expect("pool vars validated at construction");
        }
        cnf
    }

    /// Copies every shared clause into its branches, dropping the sharing.
    pub fn to_formula(&self) -> Sigma3Formula {
        let branches = (0..self.t()).map(|i| self.branch_cnf(i)).collect();
        Sigma3Formula::new(self.n, branches).expect("valid circuit materializes cleanly")
    }

    /// Pools equal clauses of a formula, in order of first appearance.
    pub fn from_formula(phi: &Sigma3Formula) -> Sigma3Circuit {
        let mut pool = Vec::new();
        let mut index: BTreeMap<&Clause, usize> = BTreeMap::new();
        let mut branches = Vec::with_capacity(phi.t());
        for branch in phi.branches() {
            let mut set = BTreeSet::new();
            for clause in branch.clauses() {
                let idx = *index.entry(clause).or_insert_with(|| {
                    pool.push(clause.clone());
                    pool.len() - 1
                });
                set.insert(idx);
            }
            branches.push(set);
        }
        Sigma3Circuit {
            n: phi.n(),
            pool,
            branches,
        }
    }

    pub fn eval_index(&self, x: u32) -> bool {
        self.branches
            .iter()
            .any(|b| b.iter().all(|&idx| self.pool[idx].eval_at(x)))
    }

    pub fn to_boolfn(&self) -> Result<BoolFn, Error> {
        BoolFn::from_fn(self.n, |x| self.eval_index(x))
    }

    pub fn computes(&self, f: &BoolFn) -> Result<bool, Error> {
        if f.n() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: f.n(),
            });
        }
        Ok(self.to_boolfn()? == *f)
    }

    /// Same wire format as formulas: branches written out in full, sharing
    /// left implicit in repeated lines.
    pub fn to_text(&self) -> String {
        self.to_formula().to_text()
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        Ok(Sigma3Circuit::from_formula(&Sigma3Formula::from_text(
            text,
        )?))
    }
}

fn parse_sigma3_header(header: &str) -> Result<(usize, usize), ParseErrorKind> {
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("sigma3") {
        return Err(ParseErrorKind::Header(
            "expected `sigma3 n=<n> t=<t>`".into(),
        ));
    }
    let n = tokens
        .next()
        .and_then(|t| t.strip_prefix("n="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| ParseErrorKind::Header("bad n= field".into()))?;
    let t = tokens
        .next()
        .and_then(|t| t.strip_prefix("t="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| ParseErrorKind::Header("bad t= field".into()))?;
    if let Some(extra) = tokens.next() {
        return Err(ParseErrorKind::Header(format!("trailing token {extra:?}")));
    }
    Ok((n, t))
}

fn parse_clause_line(line: &str, n: usize) -> Result<Clause, ParseErrorKind> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens == ["0"] {
        return Ok(Clause::empty());
    }
    let mut lits = Vec::with_capacity(tokens.len());
    for token in tokens {
        let value: i64 = token
            .parse()
            .map_err(|_| ParseErrorKind::Token(token.into()))?;
        if value == 0 || value.unsigned_abs() > n as u64 {
            return Err(ParseErrorKind::LiteralOutOfRange {
                lit: value,
                max_var: n,
            });
        }
        lits.push(Literal::new(value.unsigned_abs() as u32, value < 0));
    }
    Clause::new(lits).map_err(|e| match e {
        Error::ComplementaryPair { var } => ParseErrorKind::ComplementaryPair { var },
        other => ParseErrorKind::Annotation(other.to_string()),
    })
}

/// Splits an encoding into one branch per guess assignment: branch j is the
/// clause set with the guesses fixed to j (variable n+1 at bit 0), satisfied
/// clauses dropped and guess literals removed from the rest. The OR over
/// branches is the encoded function.
pub fn expand_formula(e: &Encoding) -> Result<Sigma3Formula, Error> {
    let (n, s) = (e.n(), e.s());
    if s > MAX_EXPANSION_S {
        return Err(Error::ExpansionTooLarge {
            s,
            max: MAX_EXPANSION_S,
        });
    }
    let branches = (0..1u32 << s).map(|j| branch_at(e, j)).collect();
    let phi = Sigma3Formula::new(n, branches)?;
    debug_assert!(phi.size() <= (1 << s) + (e.clause_count() << s));
    Ok(phi)
}

/// Shared-clause variant of expansion: the pool holds each clause with its
/// guess literals removed (deduplicated), and branch j selects the pool
/// entries whose originals are not satisfied at guess assignment j.
pub fn expand_circuit(e: &Encoding) -> Result<Sigma3Circuit, Error> {
    let (n, s) = (e.n(), e.s());
    if s > MAX_EXPANSION_S {
        return Err(Error::ExpansionTooLarge {
            s,
            max: MAX_EXPANSION_S,
        });
    }
    let mut pool: Vec<Clause> = Vec::new();
    let mut index: BTreeMap<Clause, usize> = BTreeMap::new();
    let reduced: Vec<(usize, &Clause)> = e
        .cnf()
        .clauses()
        .map(|clause| {
            let stripped = Clause::new(
                clause
                    .literals()
                    .iter()
                    .copied()
                    .filter(|l| l.var() as usize <= n),
            )
            .expect("subset of a valid clause");
            let idx = *index.entry(stripped.clone()).or_insert_with(|| {
                pool.push(stripped);
                pool.len() - 1
            });
            (idx, clause)
        })
        .collect();
    let mut branches = Vec::with_capacity(1 << s);
    for j in 0..1u32 << s {
        let mut set = BTreeSet::new();
        for &(idx, clause) in &reduced {
            let satisfied = clause
                .literals()
                .iter()
                .any(|l| l.var() as usize > n && guess_literal_true(*l, n, j));
            if !satisfied {
                set.insert(idx);
            }
        }
        branches.push(set);
    }
    debug_assert!(pool.len() <= e.clause_count());
    let circuit = Sigma3Circuit::new(n, pool, branches)?;
    debug_assert!(circuit.size() <= (1 << s) + e.clause_count());
    Ok(circuit)
}

/// Value of a guess-variable literal under assignment j (variable n+1 at
/// bit 0).
fn guess_literal_true(lit: Literal, n: usize, j: u32) -> bool {
    let bit = j >> (lit.var() as usize - n - 1) & 1 == 1;
    bit != lit.is_negated()
}

/// One branch of the expansion: the clause set with the guesses fixed to
/// assignment j, satisfied clauses dropped and guess literals removed.
pub(crate) fn branch_at(e: &Encoding, j: u32) -> Cnf {
    let n = e.n();
    let mut branch = Cnf::new(n);
    'clauses: for clause in e.cnf().clauses() {
        let mut kept = Vec::with_capacity(clause.width());
        for &lit in clause.literals() {
            if lit.var() as usize <= n {
                kept.push(lit);
            } else if guess_literal_true(lit, n, j) {
                continue 'clauses;
            }
        }
        branch
            .add(Clause::new(kept).expect("subset of a valid clause"))
            .expect("deterministic vars only");
    }
    branch
}

/// Merges t branches into one encoding with ceil(log2 t) guess variables:
/// every clause of branch i gains the guess literals falsified exactly at
/// assignment i, so fixing the guesses to i recovers branch i. Guess
/// assignments past t-1 reuse the last branch, so the clause count is the
/// total branch size exactly when t is a power of two and can exceed it
/// otherwise.
pub fn formula_to_encoding(phi: &Sigma3Formula) -> Encoding {
    let n = phi.n();
    let t = phi.t();
    let s = ceil_log2(t);
    let mut cnf = Cnf::new(n + s);
    let mut add_guarded = |branch: &Cnf, pattern: u32| {
        for clause in branch.clauses() {
            let lits = clause.literals().iter().copied().chain((0..s).map(|b| {
                Literal::new((n + b + 1) as u32, pattern >> b & 1 == 1)
            }));
            cnf.add(Clause::new(lits).expect("guess vars disjoint from branch vars"))
                .expect("vars within universe");
        }
    };
    for (i, branch) in phi.branches().iter().enumerate() {
        add_guarded(branch, i as u32);
    }
    let last = &phi.branches()[t - 1];
    for u in t..1 << s {
        add_guarded(last, u as u32);
    }
    let e = Encoding::new(n, s, cnf).expect("constructed over n+s variables");
    let r = phi.clause_gates();
    debug_assert!(if t.is_power_of_two() {
        e.clause_count() == r
    } else {
        e.clause_count() <= r + ((1 << s) - t) * last.len()
    });
    e
}

/// Circuit variant of the merge: branches are materialized (one copy of each
/// shared clause per branch) and merged as a formula. Clause count is at most
/// pool size times 2^ceil(log2 t), which is below 2·pool·t.
pub fn circuit_to_encoding(c: &Sigma3Circuit) -> Encoding {
    let e = formula_to_encoding(&c.to_formula());
    debug_assert!(e.clause_count() <= c.pool().len() << ceil_log2(c.t()));
    debug_assert!(e.clause_count() <= 2 * c.pool().len() * c.t());
    e
}

pub(crate) fn ceil_log2(t: usize) -> usize {
    t.next_power_of_two().trailing_zeros() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{block_parity_encoding, toy_par4_encoding};

    fn clause(lits: &[i64]) -> Clause {
        Clause::new(lits.iter().map(|&v| {
            Literal::new(v.unsigned_abs() as u32, v < 0)
        }))
        .unwrap()
    }

    #[test]
    fn toy_expansion_has_four_branches_of_four() {
        let phi = expand_formula(&toy_par4_encoding()).unwrap();
        assert_eq!(phi.t(), 4);
        assert_eq!(phi.clause_gates(), 16);
        assert_eq!(phi.size(), 20);
        assert!(phi.branches().iter().all(|b| b.len() == 4));
        // Branch 3 fixes y1=1, y2=1: x1 xor x2 = 1, x3 = 0, x4 = 0.
        let b3 = &phi.branches()[3];
        assert!(b3.contains(&clause(&[1, 2])));
        assert!(b3.contains(&clause(&[-1, -2])));
        assert!(b3.contains(&clause(&[-3])));
        assert!(b3.contains(&clause(&[-4])));
    }

    #[test]
    fn expansion_of_s0_is_the_cnf_itself() {
        let e = block_parity_encoding(3, 0, None).unwrap();
        let phi = expand_formula(&e).unwrap();
        assert_eq!(phi.t(), 1);
        assert_eq!(&phi.branches()[0], e.cnf());
    }

    #[test]
    fn expansion_keeps_empty_clauses() {
        let mut cnf = Cnf::new(2);
        cnf.add(clause(&[2])).unwrap();
        let e = Encoding::new(1, 1, cnf).unwrap();
        let phi = expand_formula(&e).unwrap();
        assert_eq!(phi.t(), 2);
        assert_eq!(phi.branches()[0].len(), 1);
        assert!(phi.branches()[0].clauses().next().unwrap().is_empty());
        assert!(phi.branches()[1].is_empty());
        assert_eq!(
            phi.to_boolfn().unwrap(),
            BoolFn::constant(1, true).unwrap()
        );
    }

    #[test]
    fn toy_circuit_expansion_pools_eight_clauses() {
        let c = expand_circuit(&toy_par4_encoding()).unwrap();
        assert_eq!(c.t(), 4);
        assert_eq!(c.pool().len(), 8);
        assert_eq!(c.size(), 12);
        assert!(c.branches().iter().all(|b| b.len() == 4));
        let pool: BTreeSet<&Clause> = c.pool().iter().collect();
        for lits in [&[1i64, 2][..], &[-1, -2], &[1, -2], &[-1, 2]] {
            assert!(pool.contains(&clause(lits)));
        }
        for lits in [&[3i64][..], &[-3], &[4], &[-4]] {
            assert!(pool.contains(&clause(lits)));
        }
    }

    #[test]
    fn circuit_expansion_of_s0_selects_whole_pool() {
        let e = block_parity_encoding(3, 0, None).unwrap();
        let c = expand_circuit(&e).unwrap();
        assert_eq!(c.t(), 1);
        assert_eq!(c.branches()[0].len(), c.pool().len());
        assert_eq!(c.pool().len(), e.clause_count());
    }

    #[test]
    fn pool_is_full_size_when_no_clause_mentions_guesses() {
        // Deterministic-only clauses are never satisfied by a guess
        // assignment, and distinct clauses stay distinct after stripping.
        let mut cnf = Cnf::new(5);
        for lits in [&[1i64, 2][..], &[-1, 3], &[2, -3]] {
            cnf.add(clause(lits)).unwrap();
        }
        let e = Encoding::new(3, 2, cnf).unwrap();
        let c = expand_circuit(&e).unwrap();
        assert_eq!(c.pool().len(), e.clause_count());
        assert!(c.branches().iter().all(|b| b.len() == 3));
    }

    #[test]
    fn expansions_agree_with_projection() {
        for (n, s) in [(4, 2), (4, 3), (6, 1), (5, 0)] {
            let e = block_parity_encoding(n, s, None).unwrap();
            let f = e.projected().unwrap();
            let phi = expand_formula(&e).unwrap();
            let c = expand_circuit(&e).unwrap();
            assert_eq!(phi.to_boolfn().unwrap(), f);
            assert_eq!(c.to_boolfn().unwrap(), f);
        }
    }

    #[test]
    fn merge_of_toy_expansion_gives_sixteen_clauses() {
        let phi = expand_formula(&toy_par4_encoding()).unwrap();
        let e = formula_to_encoding(&phi);
        assert_eq!(e.n(), 4);
        assert_eq!(e.s(), 2);
        assert_eq!(e.clause_count(), 16);
        assert!(e
            .encodes(&BoolFn::parity(4).unwrap())
            .unwrap());
    }

    #[test]
    fn merge_of_single_branch_is_the_cnf() {
        let e0 = block_parity_encoding(3, 0, None).unwrap();
        let phi = Sigma3Formula::new(3, vec![e0.cnf().clone()]).unwrap();
        let e = formula_to_encoding(&phi);
        assert_eq!(e.s(), 0);
        assert_eq!(e.cnf(), e0.cnf());
    }

    #[test]
    fn merge_pads_non_power_of_two_branch_counts() {
        // Branches compute x1&x2, !x1&!x2, x1&!x2; their OR is x1 | !x2.
        let branches = vec![
            Cnf::from_clauses(2, [clause(&[1]), clause(&[2])]).unwrap(),
            Cnf::from_clauses(2, [clause(&[-1]), clause(&[-2])]).unwrap(),
            Cnf::from_clauses(2, [clause(&[1]), clause(&[-2])]).unwrap(),
        ];
        let phi = Sigma3Formula::new(2, branches).unwrap();
        let e = formula_to_encoding(&phi);
        assert_eq!(e.s(), 2);
        // r = 6 plus one surplus copy of the 2-clause last branch.
        assert_eq!(e.clause_count(), 8);
        let f = BoolFn::from_fn(2, |x| x & 1 == 1 || x & 2 == 0).unwrap();
        assert!(e.encodes(&f).unwrap());
    }

    #[test]
    fn merge_round_trips_through_expansion() {
        for (n, s) in [(4, 2), (4, 3), (5, 1)] {
            let e = block_parity_encoding(n, s, None).unwrap();
            let f = e.projected().unwrap();
            let via_formula = formula_to_encoding(&expand_formula(&e).unwrap());
            assert!(via_formula.encodes(&f).unwrap());
            let via_circuit = circuit_to_encoding(&expand_circuit(&e).unwrap());
            assert!(via_circuit.encodes(&f).unwrap());
        }
    }

    #[test]
    fn circuit_merge_size_stays_under_twice_pool_times_branches() {
        let c = expand_circuit(&toy_par4_encoding()).unwrap();
        let e = circuit_to_encoding(&c);
        assert_eq!(e.s(), 2);
        assert_eq!(e.clause_count(), 16);
        assert!(e.clause_count() <= 2 * c.pool().len() * c.t());
    }

    #[test]
    fn formula_text_round_trip() {
        let phi = expand_formula(&toy_par4_encoding()).unwrap();
        let text = phi.to_text();
        assert!(text.starts_with("sigma3 n=4 t=4\n"));
        assert_eq!(Sigma3Formula::from_text(&text).unwrap(), phi);
    }

    #[test]
    fn empty_clause_and_empty_branch_round_trip() {
        let branches = vec![
            Cnf::from_clauses(2, [Clause::empty()]).unwrap(),
            Cnf::new(2),
        ];
        let phi = Sigma3Formula::new(2, branches).unwrap();
        let text = phi.to_text();
        assert_eq!(Sigma3Formula::from_text(&text).unwrap(), phi);
    }

    #[test]
    fn circuit_text_round_trip_preserves_branches() {
        let c = expand_circuit(&toy_par4_encoding()).unwrap();
        let back = Sigma3Circuit::from_text(&c.to_text()).unwrap();
        assert_eq!(back.t(), c.t());
        assert_eq!(back.pool().len(), c.pool().len());
        for i in 0..c.t() {
            assert_eq!(back.branch_cnf(i), c.branch_cnf(i));
        }
    }

    #[test]
    fn text_parse_errors_are_line_tagged() {
        let err = Sigma3Formula::from_text("sigma3 n=2 t=1\n1 3\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(
            err.kind,
            ParseErrorKind::LiteralOutOfRange { lit: 3, .. }
        ));
        let err = Sigma3Formula::from_text("sigma3 n=2 t=1\n1 -1\n").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::ComplementaryPair { var: 1 }
        ));
        let err = Sigma3Formula::from_text("sigma3 n=2 t=3\n1\n---\n2\n").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::CountMismatch {
                declared: 3,
                found: 2,
                ..
            }
        ));
        assert!(Sigma3Formula::from_text("sigma3 n=2 t=1\n1 0\n").is_err());
    }

    #[test]
    fn constructors_reject_malformed_input() {
        assert!(Sigma3Formula::new(2, vec![]).is_err());
        assert!(Sigma3Formula::new(2, vec![Cnf::new(3)]).is_err());
        let dup = vec![clause(&[1]), clause(&[1])];
        assert!(Sigma3Circuit::new(2, dup, vec![BTreeSet::new()]).is_err());
        let mut bad_branch = BTreeSet::new();
        bad_branch.insert(5);
        assert!(Sigma3Circuit::new(2, vec![clause(&[1])], vec![bad_branch]).is_err());
        assert!(Sigma3Circuit::new(2, vec![clause(&[3])], vec![BTreeSet::new()]).is_err());
    }

    #[test]
    fn expansion_s_cap_is_enforced() {
        let mut cnf = Cnf::new(22);
        cnf.add(clause(&[1])).unwrap();
        let e = Encoding::new(1, 21, cnf).unwrap();
        assert!(matches!(
            expand_formula(&e),
            Err(Error::ExpansionTooLarge { s: 21, .. })
        ));
        assert!(matches!(
            expand_circuit(&e),
            Err(Error::ExpansionTooLarge { s: 21, .. })
        ));
    }
}
