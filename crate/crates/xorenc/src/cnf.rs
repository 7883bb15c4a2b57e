//! Clauses, CNFs, and CNF encodings with non-deterministic variables.
//!
//! An [`Encoding`] is a CNF over n deterministic variables 1..=n and s
//! non-deterministic variables n+1..=n+s. It encodes f when for every x,
//! f(x) = 1 iff some assignment to the non-deterministic variables satisfies
//! the CNF jointly with x. With s = 0 this degenerates to computing f.

use crate::bits;
use crate::boolfn::{Assignment, BoolFn, MAX_ARITY};
use crate::error::Error;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A literal: variable index (1-based) plus polarity.
///
/// Ordering is by variable, positive before negative.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: u32, negated: bool) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Literal(var << 1 | negated as u32)
    }

    pub fn positive(var: u32) -> Self {
        Literal::new(var, false)
    }

    pub fn negative(var: u32) -> Self {
        Literal::new(var, true)
    }

    pub fn var(&self) -> u32 {
        self.0 >> 1
    }

    pub fn is_negated(&self) -> bool {
        self.0 & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Literal(self.0 ^ 1)
    }

    /// Value under the packed assignment `index` (variable i at bit i-1).
    pub fn eval_in(&self, index: u32) -> bool {
        (index >> (self.var() - 1) & 1 == 1) != self.is_negated()
    }

    pub fn to_dimacs(&self) -> i32 {
        let v = self.var() as i32;
        if self.is_negated() {
            -v
        } else {
            v
        }
    }

    pub fn from_dimacs(lit: i32) -> Result<Self, Error> {
        if lit == 0 || lit == i32::MIN {
            return Err(Error::VarOutOfRange {
                var: 0,
                limit: i32::MAX as usize,
            });
        }
        Ok(Literal::new(lit.unsigned_abs(), lit < 0))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A clause: a set of literals over distinct variables.
///
/// Construction rejects complementary pairs; [`Clause::normalized`] instead
/// drops tautological inputs. The empty clause is representable and
/// evaluates to false.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Result<Self, Error> {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(Error::ComplementaryPair { var: pair[0].var() });
            }
        }
        Ok(Clause { lits })
    }

    /// Like [`Clause::new`] but returns None for tautological inputs.
    pub fn normalized(lits: impl IntoIterator<Item = Literal>) -> Option<Self> {
        match Clause::new(lits) {
            Ok(c) => Some(c),
            Err(_) => None,
        }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn max_var(&self) -> u32 {
        self.lits.last().map_or(0, |l| l.var())
    }

    /// True iff some literal is true under the packed assignment.
    pub fn eval_at(&self, index: u32) -> bool {
        self.lits.iter().any(|l| l.eval_in(index))
    }

    /// Copy without the given literal.
    fn without(&self, lit: Literal) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|&l| l != lit).collect(),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for lit in &self.lits {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
            first = false;
        }
        Ok(())
    }
}

/// A CNF: a set of clauses with an explicit variable universe 1..=n_vars.
///
/// Variables need not occur. The empty CNF evaluates to true.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cnf {
    n_vars: usize,
    clauses: BTreeSet<Clause>,
}

impl Cnf {
    pub fn new(n_vars: usize) -> Self {
        assert!(n_vars >= 1, "variable universe must be nonempty");
        Cnf {
            n_vars,
            clauses: BTreeSet::new(),
        }
    }

    pub fn from_clauses(
        n_vars: usize,
        clauses: impl IntoIterator<Item = Clause>,
    ) -> Result<Self, Error> {
        let mut cnf = Cnf::new(n_vars);
        for c in clauses {
            cnf.add(c)?;
        }
        Ok(cnf)
    }

    pub fn add(&mut self, clause: Clause) -> Result<(), Error> {
        let max = clause.max_var();
        if max as usize > self.n_vars {
            return Err(Error::VarOutOfRange {
                var: max,
                limit: self.n_vars,
            });
        }
        self.clauses.insert(clause);
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Number of (distinct) clauses.
    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Clauses in canonical order.
    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    /// Width of the widest clause; 0 for the empty CNF.
    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, Error> {
        if a.n() != self.n_vars {
            return Err(Error::ArityMismatch {
                expected: self.n_vars,
                got: a.n(),
            });
        }
        Ok(self.eval_index(a.index()))
    }

    /// Evaluation at a packed assignment over exactly n_vars variables.
    pub fn eval_index(&self, index: u32) -> bool {
        self.clauses.iter().all(|c| c.eval_at(index))
    }

    /// Materializes the truth table. Requires n_vars <= 24.
    pub fn to_boolfn(&self) -> Result<BoolFn, Error> {
        if self.n_vars > MAX_ARITY {
            return Err(Error::ArityOutOfRange {
                n: self.n_vars,
                max: MAX_ARITY,
            });
        }
        let size = 1usize << self.n_vars;
        let words = bits::words_for(size);
        let mut blocks = vec![!0u64; words];
        for clause in &self.clauses {
            for (w, word) in blocks.iter_mut().enumerate() {
                if *word == 0 {
                    continue;
                }
                // A clause is falsified exactly where all its literals are false.
                let mut falsified = !0u64;
                for lit in clause.literals() {
                    let pat = bits::var_word(lit.var() as usize - 1, w);
                    falsified &= if lit.is_negated() { pat } else { !pat };
                    if falsified == 0 {
                        break;
                    }
                }
                *word &= !falsified;
            }
        }
        BoolFn::from_blocks(self.n_vars, blocks)
    }

    /// Pointwise equality with f over all assignments.
    pub fn computes(&self, f: &BoolFn) -> Result<bool, Error> {
        if self.n_vars != f.n() {
            return Err(Error::ArityMismatch {
                expected: f.n(),
                got: self.n_vars,
            });
        }
        Ok(self.to_boolfn()? == *f)
    }

    /// Assigns variable `var` := `val`: satisfied clauses are dropped, the
    /// falsified literal is removed elsewhere. Numbering is preserved and
    /// the variable becomes vacuous; an empty clause may result and is kept.
    pub fn restrict(&self, var: u32, val: bool) -> Result<Cnf, Error> {
        if var == 0 || var as usize > self.n_vars {
            return Err(Error::VarOutOfRange {
                var,
                limit: self.n_vars,
            });
        }
        let satisfied = Literal::new(var, !val);
        let falsified = satisfied.complement();
        let mut out = Cnf::new(self.n_vars);
        for clause in &self.clauses {
            if clause.contains(satisfied) {
                continue;
            }
            let kept = if clause.contains(falsified) {
                clause.without(falsified)
            } else {
                clause.clone()
            };
            out.clauses.insert(kept);
        }
        Ok(out)
    }
}

/// A CNF encoding: deterministic variables 1..=n, non-deterministic n+1..=n+s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Encoding {
    n: usize,
    s: usize,
    cnf: Cnf,
}

impl Encoding {
    pub fn new(n: usize, s: usize, cnf: Cnf) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ArityOutOfRange { n, max: MAX_ARITY });
        }
        if cnf.n_vars() != n + s {
            return Err(Error::ArityMismatch {
                expected: n + s,
                got: cnf.n_vars(),
            });
        }
        Ok(Encoding { n, s, cnf })
    }

    /// Wraps a plain CNF as an encoding with s = 0.
    pub fn from_cnf(cnf: Cnf) -> Self {
        Encoding {
            n: cnf.n_vars(),
            s: 0,
            cnf,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn clause_count(&self) -> usize {
        self.cnf.len()
    }

    pub fn max_width(&self) -> usize {
        self.cnf.max_width()
    }

    pub fn is_nondet(&self, var: u32) -> bool {
        var as usize > self.n && var as usize <= self.n + self.s
    }

    /// The encoded function: existential projection of the CNF's table over
    /// the non-deterministic variables. Requires n + s <= 24.
    pub fn projected(&self) -> Result<BoolFn, Error> {
        let table = self.cnf.to_boolfn()?;
        if self.s == 0 {
            return Ok(table);
        }
        let mut blocks = table.blocks().to_vec();
        for vars in (self.n + 1..=self.n + self.s).rev() {
            blocks = bits::exists_top(&blocks, vars);
        }
        BoolFn::from_blocks(self.n, blocks)
    }

    /// True iff for every x, f(x) = 1 exactly when some assignment to the
    /// non-deterministic variables satisfies the CNF jointly with x.
    pub fn encodes(&self, f: &BoolFn) -> Result<bool, Error> {
        if self.n != f.n() {
            return Err(Error::ArityMismatch {
                expected: f.n(),
                got: self.n,
            });
        }
        Ok(self.projected()? == *f)
    }

    /// Toggles the polarity of every occurrence of deterministic variable i.
    /// An encoding of f becomes an encoding of f with input i complemented.
    pub fn flip_variable_signs(&self, i: u32) -> Result<Encoding, Error> {
        if i == 0 || i as usize > self.n + self.s {
            return Err(Error::VarOutOfRange {
                var: i,
                limit: self.n + self.s,
            });
        }
        if self.is_nondet(i) {
            return Err(Error::NotDeterministic { var: i });
        }
        let mut cnf = Cnf::new(self.cnf.n_vars());
        for clause in self.cnf.clauses() {
            let flipped = Clause::new(clause.literals().iter().map(|&l| {
                if l.var() == i {
                    l.complement()
                } else {
                    l
                }
            }))
            .expect("polarity flip preserves pair-freeness");
            cnf.clauses.insert(flipped);
        }
        Encoding::new(self.n, self.s, cnf)
    }

    /// Eliminates non-deterministic variable j by resolution: all
    /// non-tautological resolvents of opposing occurrences are added, all
    /// clauses mentioning j are removed. The encoded function is unchanged;
    /// j stays in the numbering as a vacuous variable.
    pub fn resolve_out(&self, j: u32) -> Result<Encoding, Error> {
        if !self.is_nondet(j) {
            return Err(Error::NotNondeterministic { var: j });
        }
        let pos_lit = Literal::positive(j);
        let neg_lit = Literal::negative(j);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut cnf = Cnf::new(self.cnf.n_vars());
        for clause in self.cnf.clauses() {
            if clause.contains(pos_lit) {
                pos.push(clause);
            } else if clause.contains(neg_lit) {
                neg.push(clause);
            } else {
                cnf.clauses.insert(clause.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                let resolvent = Clause::normalized(
                    p.without(pos_lit)
                        .literals()
                        .iter()
                        .chain(q.without(neg_lit).literals())
                        .copied(),
                );
                if let Some(r) = resolvent {
                    cnf.clauses.insert(r);
                }
            }
        }
        Encoding::new(self.n, self.s, cnf)
    }

    /// Occurrence counts (positive, negative) for every variable 1..=n+s.
    pub fn literal_profile(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut profile: BTreeMap<u32, (usize, usize)> =
            (1..=(self.n + self.s) as u32).map(|v| (v, (0, 0))).collect();
        for clause in self.cnf.clauses() {
            for lit in clause.literals() {
                let entry = profile.get_mut(&lit.var()).expect("var within universe");
                if lit.is_negated() {
                    entry.1 += 1;
                } else {
                    entry.0 += 1;
                }
            }
        }
        profile
    }

    /// Repeatedly assigns every non-deterministic variable occurring with
    /// only one polarity to the value satisfying that polarity. The encoded
    /// function is unchanged; the result has no pure non-deterministic
    /// literals.
    pub fn reduce_pure_nondet(&self) -> Encoding {
        let mut current = self.clone();
        loop {
            let profile = current.literal_profile();
            let pure = (self.n as u32 + 1..=(self.n + self.s) as u32).find_map(|v| {
                match profile[&v] {
                    (p, 0) if p > 0 => Some((v, true)),
                    (0, q) if q > 0 => Some((v, false)),
                    _ => None,
                }
            });
            match pure {
                Some((var, val)) => {
                    let cnf = current
                        .cnf
                        .restrict(var, val)
                        .expect("profile var within universe");
                    current = Encoding::new(self.n, self.s, cnf).expect("arity unchanged");
                }
                None => return current,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(lits: &[i32]) -> Clause {
        Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l).unwrap())).unwrap()
    }

    /// One full-width clause per even-weight point, rejecting it.
    fn parity3_cnf() -> Cnf {
        let clauses = [
            [1, 2, 3],
            [1, -2, -3],
            [-1, 2, -3],
            [-1, -2, 3],
        ];
        Cnf::from_clauses(3, clauses.iter().map(|c| clause(c))).unwrap()
    }

    #[test]
    fn literal_ordering_is_var_then_polarity() {
        assert!(Literal::positive(1) < Literal::negative(1));
        assert!(Literal::negative(1) < Literal::positive(2));
        assert_eq!(Literal::negative(3).complement(), Literal::positive(3));
        assert_eq!(Literal::from_dimacs(-7).unwrap(), Literal::negative(7));
        assert!(Literal::from_dimacs(0).is_err());
    }

    #[test]
    fn clause_rejects_complementary_pair_but_normalized_drops_it() {
        let lits = [Literal::positive(2), Literal::negative(2)];
        assert!(matches!(
            Clause::new(lits),
            Err(Error::ComplementaryPair { var: 2 })
        ));
        assert!(Clause::normalized(lits).is_none());
        let c = Clause::new([Literal::positive(2), Literal::positive(2)]).unwrap();
        assert_eq!(c.width(), 1);
    }

    #[test]
    fn empty_cnf_is_true_and_empty_clause_is_false() {
        let empty = Cnf::new(2);
        let a = Assignment::new(2, 0).unwrap();
        assert!(empty.eval(&a).unwrap());
        let mut falsum = Cnf::new(2);
        falsum.add(Clause::empty()).unwrap();
        for idx in 0..4 {
            assert!(!falsum.eval_index(idx));
        }
    }

    #[test]
    fn eval_on_binary_clause() {
        let cnf = Cnf::from_clauses(2, [clause(&[1, 2])]).unwrap();
        assert!(!cnf.eval(&Assignment::new(2, 0b00).unwrap()).unwrap());
        assert!(cnf.eval(&Assignment::new(2, 0b10).unwrap()).unwrap());
    }

    #[test]
    fn parity3_cnf_accepts_odd_points() {
        let cnf = parity3_cnf();
        let a = Assignment::from_bools(&[false, false, true]).unwrap();
        assert!(cnf.eval(&a).unwrap());
        assert!(cnf.computes(&BoolFn::parity(3).unwrap()).unwrap());
    }

    #[test]
    fn two_clause_xor_computes_parity2() {
        let cnf = Cnf::from_clauses(2, [clause(&[1, 2]), clause(&[-1, -2])]).unwrap();
        assert!(cnf.computes(&BoolFn::parity(2).unwrap()).unwrap());
    }

    #[test]
    fn dropping_a_clause_breaks_parity3() {
        let full = parity3_cnf();
        let f = BoolFn::parity(3).unwrap();
        for skip in full.clauses() {
            let smaller = Cnf::from_clauses(
                3,
                full.clauses().filter(|c| *c != skip).cloned(),
            )
            .unwrap();
            assert!(!smaller.computes(&f).unwrap());
        }
    }

    #[test]
    fn computes_rejects_arity_mismatch() {
        let cnf = parity3_cnf();
        assert!(matches!(
            cnf.computes(&BoolFn::parity(4).unwrap()),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn to_boolfn_matches_pointwise_eval() {
        let cnf = Cnf::from_clauses(
            4,
            [clause(&[1, -3]), clause(&[2, 3, -4]), clause(&[-1, -2])],
        )
        .unwrap();
        let table = cnf.to_boolfn().unwrap();
        for idx in 0..16 {
            assert_eq!(table.value(idx), cnf.eval_index(idx));
        }
    }

    #[test]
    fn restrict_parity3_on_x3_zero() {
        let restricted = parity3_cnf().restrict(3, false).unwrap();
        let expect =
            Cnf::from_clauses(3, [clause(&[1, 2]), clause(&[-1, -2])]).unwrap();
        assert_eq!(restricted, expect);
    }

    #[test]
    fn restrict_unit_clause_both_ways() {
        let unit = Cnf::from_clauses(1, [clause(&[1])]).unwrap();
        assert!(unit.restrict(1, true).unwrap().is_empty());
        let falsum = unit.restrict(1, false).unwrap();
        assert_eq!(falsum.len(), 1);
        assert!(falsum.clauses().next().unwrap().is_empty());
    }

    #[test]
    fn restrict_agrees_with_substituted_eval() {
        let cnf = Cnf::from_clauses(
            3,
            [clause(&[1, -2]), clause(&[2, 3]), clause(&[-1, -3])],
        )
        .unwrap();
        for var in 1..=3u32 {
            for val in [false, true] {
                let restricted = cnf.restrict(var, val).unwrap();
                for idx in 0..8u32 {
                    let forced = if val {
                        idx | 1 << (var - 1)
                    } else {
                        idx & !(1 << (var - 1))
                    };
                    assert_eq!(restricted.eval_index(idx), cnf.eval_index(forced));
                }
            }
        }
    }

    #[test]
    fn encoding_with_s0_reduces_to_computes() {
        let enc = Encoding::from_cnf(parity3_cnf());
        assert!(enc.encodes(&BoolFn::parity(3).unwrap()).unwrap());
    }

    #[test]
    fn flip_is_involution_and_flips_unit_clause() {
        let enc = Encoding::from_cnf(Cnf::from_clauses(1, [clause(&[1])]).unwrap());
        let flipped = enc.flip_variable_signs(1).unwrap();
        assert_eq!(
            flipped.cnf().clauses().next().unwrap(),
            &clause(&[-1])
        );
        assert_eq!(flipped.flip_variable_signs(1).unwrap(), enc);
    }

    #[test]
    fn flip_rejects_nondet_variable() {
        let cnf = Cnf::from_clauses(3, [clause(&[1, 3])]).unwrap();
        let enc = Encoding::new(2, 1, cnf).unwrap();
        assert!(matches!(
            enc.flip_variable_signs(3),
            Err(Error::NotDeterministic { var: 3 })
        ));
    }

    #[test]
    fn resolve_single_resolvent() {
        let cnf = Cnf::from_clauses(3, [clause(&[1, 3]), clause(&[2, -3])]).unwrap();
        let enc = Encoding::new(2, 1, cnf).unwrap();
        let resolved = enc.resolve_out(3).unwrap();
        assert_eq!(resolved.clause_count(), 1);
        assert!(resolved.cnf().contains(&clause(&[1, 2])));
        let or2 = BoolFn::from_fn(2, |idx| idx & 0b01 != 0 || idx & 0b10 != 0).unwrap();
        assert!(enc.encodes(&or2).unwrap());
        assert!(resolved.encodes(&or2).unwrap());
    }

    #[test]
    fn resolve_drops_tautological_resolvent() {
        let cnf = Cnf::from_clauses(2, [clause(&[1, 2]), clause(&[-1, -2])]).unwrap();
        let enc = Encoding::new(1, 1, cnf).unwrap();
        let resolved = enc.resolve_out(2).unwrap();
        assert!(resolved.cnf().is_empty());
    }

    #[test]
    fn resolve_one_two_literal_shrinks_clause_count() {
        let cnf = Cnf::from_clauses(
            4,
            [clause(&[1, 4]), clause(&[2, -4]), clause(&[3, -4])],
        )
        .unwrap();
        let enc = Encoding::new(3, 1, cnf).unwrap();
        let resolved = enc.resolve_out(4).unwrap();
        assert_eq!(resolved.clause_count(), 2);
        assert!(resolved.cnf().contains(&clause(&[1, 2])));
        assert!(resolved.cnf().contains(&clause(&[1, 3])));
        assert_eq!(
            enc.projected().unwrap(),
            resolved.projected().unwrap()
        );
    }

    #[test]
    fn resolve_rejects_deterministic_variable() {
        let cnf = Cnf::from_clauses(2, [clause(&[1, 2])]).unwrap();
        let enc = Encoding::new(1, 1, cnf).unwrap();
        assert!(matches!(
            enc.resolve_out(1),
            Err(Error::NotNondeterministic { var: 1 })
        ));
    }

    #[test]
    fn profile_counts_occurrences() {
        let enc = Encoding::from_cnf(Cnf::from_clauses(1, [clause(&[1])]).unwrap());
        assert_eq!(enc.literal_profile()[&1], (1, 0));

        let empty = Encoding::new(2, 1, Cnf::new(3)).unwrap();
        let profile = empty.literal_profile();
        assert_eq!(profile.len(), 3);
        assert!(profile.values().all(|&c| c == (0, 0)));
    }

    #[test]
    fn pure_reduction_clears_positive_only_variable() {
        let cnf = Cnf::from_clauses(3, [clause(&[1, 3]), clause(&[2, 3])]).unwrap();
        let enc = Encoding::new(2, 1, cnf).unwrap();
        let reduced = enc.reduce_pure_nondet();
        assert!(reduced.cnf().is_empty());
        assert!(reduced.encodes(&BoolFn::constant(2, true).unwrap()).unwrap());
    }

    #[test]
    fn pure_reduction_fixpoint_on_mixed_variable() {
        let cnf = Cnf::from_clauses(
            3,
            [clause(&[1, 3]), clause(&[2, -3]), clause(&[-1, 3]), clause(&[-2, -3])],
        )
        .unwrap();
        let enc = Encoding::new(2, 1, cnf).unwrap();
        assert_eq!(enc.reduce_pure_nondet(), enc);
    }

    #[test]
    fn pure_reduction_cascades() {
        let cnf = Cnf::from_clauses(3, [clause(&[1, 2]), clause(&[-1, 3])]).unwrap();
        let enc = Encoding::new(1, 2, cnf).unwrap();
        let reduced = enc.reduce_pure_nondet();
        assert!(reduced.cnf().is_empty());
    }

    #[test]
    fn pure_reduction_preserves_projection() {
        let cnf = Cnf::from_clauses(
            4,
            [clause(&[1, 3]), clause(&[2, -3, 4]), clause(&[-2, 4])],
        )
        .unwrap();
        let enc = Encoding::new(2, 2, cnf).unwrap();
        let reduced = enc.reduce_pure_nondet();
        assert_eq!(enc.projected().unwrap(), reduced.projected().unwrap());
        let profile = reduced.literal_profile();
        for v in 3..=4u32 {
            let (p, q) = profile[&v];
            assert!((p == 0 && q == 0) || (p > 0 && q > 0));
        }
    }
}
