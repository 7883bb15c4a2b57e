//! Certified search for small encodings.
//!
//! The exhaustive engine enumerates clause sets in canonical order over the
//! joint variable space, tracking which joint points remain satisfiable in a
//! bitset. A completed traversal with no hit is a nonexistence certificate for
//! the searched bounds; a hit is independently re-verified before it is
//! returned. The cegar engine instead synthesizes candidates with an external
//! SAT solver against a growing set of counterexample constraints; it can find
//! encodings but never certifies nonexistence.

use std::collections::BTreeSet;

use crate::bits;
use crate::boolfn::BoolFn;
use crate::cnf::{Clause, Cnf, Encoding, Literal};
use crate::error::Error;
use crate::sigma3::expand_formula;
use crate::solver::solve_external;

/// Joint-variable cap for the exhaustive engine (bitset width 2^16).
pub const MAX_SEARCH_VARS: usize = 16;
/// Clause-budget cap for the exhaustive engine.
pub const MAX_SEARCH_CLAUSES: usize = 8;
/// Largest candidate pool either engine will materialize.
pub const MAX_POOL: usize = 1 << 17;
/// Symmetry pruning enumerates the nondeterministic symmetry group only up
/// to this many non-deterministic variables (group size 2^s * s!).
pub const MAX_SYMMETRY_S: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    Exhaustive,
    Cegar,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub f: BoolFn,
    pub s: usize,
    pub m_max: usize,
    pub k_max: usize,
    pub mode: SearchMode,
    pub canonicalize: bool,
    pub node_limit: Option<u64>,
}

impl SearchConfig {
    pub fn new(f: BoolFn, s: usize, m_max: usize, k_max: usize) -> Self {
        SearchConfig {
            f,
            s,
            m_max,
            k_max,
            mode: SearchMode::Exhaustive,
            canonicalize: true,
            node_limit: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let total = self.f.n() + self.s;
        if total > MAX_SEARCH_VARS {
            return Err(Error::InvalidSearch {
                reason: format!("n+s = {total} exceeds the searchable cap {MAX_SEARCH_VARS}"),
            });
        }
        if self.mode == SearchMode::Exhaustive && self.m_max > MAX_SEARCH_CLAUSES {
            return Err(Error::InvalidSearch {
                reason: format!(
                    "m_max = {} exceeds the exhaustive cap {MAX_SEARCH_CLAUSES}",
                    self.m_max
                ),
            });
        }
        if self.m_max > 0 {
            let pool = pool_size(total, self.k_max.min(total));
            if pool > MAX_POOL as u128 {
                return Err(Error::InvalidSearch {
                    reason: format!("candidate pool of {pool} clauses exceeds cap {MAX_POOL}"),
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub found: Option<Encoding>,
    pub nodes_explored: u64,
    /// True only when the whole bounded space was traversed; together with
    /// `found == None` this certifies nonexistence within the searched bounds
    /// (and claims nothing beyond them).
    pub exhausted: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinClausesOutcome {
    Exact(usize),
    /// Every size up to the ceiling was exhausted without a hit.
    AtLeast(usize),
}

#[derive(Clone, Debug)]
pub struct MinClausesReport {
    pub outcome: MinClausesOutcome,
    /// One certificate per searched size, smallest first.
    pub certificates: Vec<SearchResult>,
}

/// Every non-tautological clause over variables `1..=n_total` with width in
/// `1..=k_max`, in canonical clause order.
pub fn candidate_clauses(n_total: usize, k_max: usize) -> Vec<Clause> {
    let mut pool = BTreeSet::new();
    for vars in 1u32..1 << n_total {
        let width = vars.count_ones() as usize;
        if width > k_max {
            continue;
        }
        let positions: Vec<u32> = (0..n_total as u32).filter(|i| vars >> i & 1 == 1).collect();
        for signs in 0..1u32 << width {
            let lits = positions
                .iter()
                .enumerate()
                .map(|(b, &p)| Literal::new(p + 1, signs >> b & 1 == 1));
            pool.insert(Clause::new(lits).expect("distinct variables cannot clash"));
        }
    }
    pool.into_iter().collect()
}

fn pool_size(n_total: usize, k_max: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for w in 1..=k_max.min(n_total) {
        binom = binom * (n_total - w + 1) as u128 / w as u128;
        total += binom << w;
    }
    total
}

pub fn find_encoding(cfg: &SearchConfig, solver_path: Option<&str>) -> Result<SearchResult, Error> {
    cfg.validate()?;
    match cfg.mode {
        SearchMode::Exhaustive => exhaustive(cfg),
        SearchMode::Cegar => match solver_path {
            None => Err(Error::SolverNotConfigured),
            Some(path) => cegar(cfg, path),
        },
    }
}

/// Smallest clause count of any encoding of `f` with `s` guesses and width
/// at most `k_max`, determined by exhausting ascending sizes.
pub fn min_clauses(
    f: &BoolFn,
    s: usize,
    k_max: usize,
    m_ceiling: usize,
) -> Result<MinClausesReport, Error> {
    if m_ceiling > MAX_SEARCH_CLAUSES {
        return Err(Error::InvalidSearch {
            reason: format!("m_ceiling = {m_ceiling} exceeds the exhaustive cap {MAX_SEARCH_CLAUSES}"),
        });
    }
    let mut certificates = Vec::new();
    for m in 0..=m_ceiling {
        let cfg = SearchConfig::new(f.clone(), s, m, k_max);
        let result = find_encoding(&cfg, None)?;
        let hit = result.found.is_some();
        let exhausted = result.exhausted;
        certificates.push(result);
        if hit {
            return Ok(MinClausesReport {
                outcome: MinClausesOutcome::Exact(m),
                certificates,
            });
        }
        if !exhausted {
            return Err(Error::Inconclusive {
                reason: format!("size-{m} level was not exhausted"),
            });
        }
    }
    Ok(MinClausesReport {
        outcome: MinClausesOutcome::AtLeast(m_ceiling + 1),
        certificates,
    })
}

// Internal mask layout: joint point (x, y) sits at bit x*2^s + y, so the
// guesses for one x form one contiguous window. Variable i <= n maps to bit
// position s+i-1 of the point index, variable n+j to position j-1.

struct Searcher {
    n: usize,
    s: usize,
    m_max: usize,
    node_limit: Option<u64>,
    words: usize,
    pool: Vec<Clause>,
    kill: Vec<Vec<u64>>,
    suffix_union: Vec<Vec<u64>>,
    positives: Vec<u32>,
    negmask: Vec<u64>,
    group: Vec<(Vec<usize>, u32)>,
    alive: Vec<Vec<u64>>,
    chosen: Vec<Clause>,
    nodes: u64,
}

enum Walk {
    Found,
    Pruned,
    LimitHit,
}

fn exhaustive(cfg: &SearchConfig) -> Result<SearchResult, Error> {
    let n = cfg.f.n();
    let s = cfg.s;
    let total = n + s;
    let points = 1usize << total;
    let words = bits::words_for(points);
    let pool = if cfg.m_max == 0 {
        Vec::new()
    } else {
        candidate_clauses(total, cfg.k_max.min(total))
    };
    let kill: Vec<Vec<u64>> = pool.iter().map(|c| kill_mask(c, n, s, words)).collect();
    let mut suffix_union = vec![vec![0u64; words]; pool.len() + 1];
    for i in (0..pool.len()).rev() {
        let (head, tail) = suffix_union.split_at_mut(i + 1);
        for w in 0..words {
            head[i][w] = tail[0][w] | kill[i][w];
        }
    }
    let mut negmask = vec![0u64; words];
    for x in 0..1u32 << n {
        if !cfg.f.value(x) {
            for y in 0..1usize << s {
                bits::set_bit(&mut negmask, (x as usize) << s | y);
            }
        }
    }
    let positives: Vec<u32> = cfg.f.ones_iter().collect();
    let group = if cfg.canonicalize && s > 0 && s <= MAX_SYMMETRY_S {
        symmetry_group(s)
    } else {
        Vec::new()
    };
    let mut full = vec![u64::MAX; words];
    bits::clear_tail(&mut full, points);
    let mut alive = vec![vec![0u64; words]; cfg.m_max + 1];
    alive[0] = full;
    let mut searcher = Searcher {
        n,
        s,
        m_max: cfg.m_max,
        node_limit: cfg.node_limit,
        words,
        pool,
        kill,
        suffix_union,
        positives,
        negmask,
        group,
        alive,
        chosen: Vec::new(),
        nodes: 0,
    };
    match searcher.dfs(0, 0) {
        Walk::Found => {
            let encoding = verify_found(n, s, cfg.f.clone(), &searcher.chosen)?;
            Ok(SearchResult {
                found: Some(encoding),
                nodes_explored: searcher.nodes,
                exhausted: false,
            })
        }
        Walk::Pruned => Ok(SearchResult {
            found: None,
            nodes_explored: searcher.nodes,
            exhausted: true,
        }),
        Walk::LimitHit => Ok(SearchResult {
            found: None,
            nodes_explored: searcher.nodes,
            exhausted: false,
        }),
    }
}

impl Searcher {
    fn dfs(&mut self, depth: usize, next: usize) -> Walk {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Walk::LimitHit;
        }
        for &x in &self.positives {
            if !window_nonempty(&self.alive[depth], x, self.s) {
                return Walk::Pruned;
            }
        }
        if !self.prefix_canonical() {
            return Walk::Pruned;
        }
        let alive = &self.alive[depth];
        if (0..self.words).all(|w| alive[w] & self.negmask[w] == 0) {
            return Walk::Found;
        }
        if depth == self.m_max {
            return Walk::Pruned;
        }
        // No completion can block a guess the remaining candidates all miss.
        let escape = (0..self.words)
            .any(|w| alive[w] & self.negmask[w] & !self.suffix_union[next][w] != 0);
        if escape {
            return Walk::Pruned;
        }
        for idx in next..self.pool.len() {
            let (head, tail) = self.alive.split_at_mut(depth + 1);
            for w in 0..self.words {
                tail[0][w] = head[depth][w] & !self.kill[idx][w];
            }
            self.chosen.push(self.pool[idx].clone());
            let walk = self.dfs(depth + 1, idx + 1);
            match walk {
                Walk::Pruned => {
                    self.chosen.pop();
                }
                Walk::Found | Walk::LimitHit => return walk,
            }
        }
        Walk::Pruned
    }

    /// False when some symmetry maps the chosen prefix strictly below itself;
    /// pruning those prefixes keeps exactly the orbit-minimal completions.
    fn prefix_canonical(&self) -> bool {
        if self.group.is_empty() || self.chosen.is_empty() {
            return true;
        }
        let mut mapped = Vec::with_capacity(self.chosen.len());
        for (perm, flips) in &self.group {
            mapped.clear();
            mapped.extend(
                self.chosen
                    .iter()
                    .map(|c| apply_symmetry(c, self.n, perm, *flips)),
            );
            mapped.sort_unstable();
            for (m, c) in mapped.iter().zip(&self.chosen) {
                match m.cmp(c) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}

fn kill_mask(clause: &Clause, n: usize, s: usize, words: usize) -> Vec<u64> {
    let points = 1usize << (n + s);
    let mut mask = vec![u64::MAX; words];
    for lit in clause.literals() {
        let var = lit.var() as usize;
        let pos = if var <= n { s + var - 1 } else { var - n - 1 };
        for (w, word) in mask.iter_mut().enumerate() {
            let vw = bits::var_word(pos, w);
            *word &= if lit.is_negated() { vw } else { !vw };
        }
    }
    bits::clear_tail(&mut mask, points);
    mask
}

fn window_nonempty(mask: &[u64], x: u32, s: usize) -> bool {
    let start = (x as usize) << s;
    if s >= 6 {
        let w0 = start >> 6;
        mask[w0..w0 + (1 << (s - 6))].iter().any(|&w| w != 0)
    } else {
        let width_mask = (1u64 << (1 << s)) - 1;
        mask[start >> 6] >> (start & 63) & width_mask != 0
    }
}

/// All pairs (permutation of the guess variables, polarity flips), identity
/// excluded. Clause sets related by one of these encode the same functions.
fn symmetry_group(s: usize) -> Vec<(Vec<usize>, u32)> {
    let mut perms = Vec::new();
    let mut current: Vec<usize> = (0..s).collect();
    permute(&mut current, 0, &mut perms);
    perms.sort_unstable();
    let mut group = Vec::new();
    for perm in &perms {
        for flips in 0..1u32 << s {
            if flips == 0 && perm.iter().enumerate().all(|(i, &p)| i == p) {
                continue;
            }
            group.push((perm.clone(), flips));
        }
    }
    group
}

fn permute(current: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == current.len() {
        out.push(current.clone());
        return;
    }
    for i in at..current.len() {
        current.swap(at, i);
        permute(current, at + 1, out);
        current.swap(at, i);
    }
}

fn apply_symmetry(clause: &Clause, n: usize, perm: &[usize], flips: u32) -> Clause {
    let lits = clause.literals().iter().map(|lit| {
        let var = lit.var() as usize;
        if var <= n {
            *lit
        } else {
            let j = var - n - 1;
            Literal::new(
                (n + perm[j] + 1) as u32,
                lit.is_negated() ^ (flips >> j & 1 == 1),
            )
        }
    });
    Clause::new(lits).expect("relabeling guesses is bijective")
}

/// Independent acceptance check for a search hit: project the joint CNF and
/// separately expand it branch by branch; both must reproduce `f` exactly.
fn verify_found(n: usize, s: usize, f: BoolFn, chosen: &[Clause]) -> Result<Encoding, Error> {
    let cnf = Cnf::from_clauses(n + s, chosen.iter().cloned())?;
    let encoding = Encoding::new(n, s, cnf)?;
    if !encoding.encodes(&f)? {
        return Err(Error::VerificationMismatch);
    }
    if expand_formula(&encoding)?.to_boolfn()? != f {
        return Err(Error::VerificationMismatch);
    }
    Ok(encoding)
}

fn cegar(cfg: &SearchConfig, solver_path: &str) -> Result<SearchResult, Error> {
    let n = cfg.f.n();
    let s = cfg.s;
    let total = n + s;
    let points = 1usize << total;
    let words = bits::words_for(points);
    let pool = candidate_clauses(total, cfg.k_max.min(total));
    let kill: Vec<Vec<u64>> = pool.iter().map(|c| kill_mask(c, n, s, words)).collect();
    let killers = |x: u32, y: usize| -> Vec<usize> {
        let p = (x as usize) << s | y;
        (0..pool.len())
            .filter(|&c| bits::get_bit(&kill[c], p))
            .collect()
    };
    let mut active: BTreeSet<u32> = BTreeSet::new();
    let mut rounds: u64 = 0;
    loop {
        rounds += 1;
        if cfg.node_limit.is_some_and(|l| rounds > l) {
            return Ok(SearchResult {
                found: None,
                nodes_explored: rounds - 1,
                exhausted: false,
            });
        }
        let doc = synthesis_instance(cfg, &pool, &killers, &active)?;
        let outcome = solve_external(&doc, solver_path)?;
        let Some(model) = outcome.model else {
            return Ok(SearchResult {
                found: None,
                nodes_explored: rounds,
                exhausted: false,
            });
        };
        let chosen: Vec<Clause> = (0..pool.len())
            .filter(|&i| model[i])
            .map(|i| pool[i].clone())
            .collect();
        debug_assert!(chosen.len() <= cfg.m_max);
        let cnf = Cnf::from_clauses(total, chosen.iter().cloned())?;
        let candidate = Encoding::new(n, s, cnf)?;
        let projected = candidate.projected()?;
        if projected == cfg.f {
            let encoding = verify_found(n, s, cfg.f.clone(), &chosen)?;
            return Ok(SearchResult {
                found: Some(encoding),
                nodes_explored: rounds,
                exhausted: false,
            });
        }
        let counterexample = (0..1u32 << n)
            .find(|&x| projected.value(x) != cfg.f.value(x))
            .expect("differing functions differ somewhere");
        if !active.insert(counterexample) {
            return Err(Error::Inconclusive {
                reason: "constraint synthesis repeated a counterexample".into(),
            });
        }
    }
}

/// SAT instance asking for a clause selection that behaves correctly on every
/// active counterexample: blocked everywhere f is 0, witnessed somewhere f is 1.
fn synthesis_instance(
    cfg: &SearchConfig,
    pool: &[Clause],
    killers: &dyn Fn(u32, usize) -> Vec<usize>,
    active: &BTreeSet<u32>,
) -> Result<crate::dimacs::DimacsDocument, Error> {
    let sel = |i: usize| (i + 1) as i32;
    let mut next_var = pool.len() as i32 + 1;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for &x in active {
        if cfg.f.value(x) {
            let witness_base = next_var;
            next_var += 1 << cfg.s;
            clauses.push((0..1 << cfg.s).map(|y| witness_base + y).collect());
            for y in 0..1usize << cfg.s {
                let w = witness_base + y as i32;
                for c in killers(x, y) {
                    clauses.push(vec![-w, -sel(c)]);
                }
            }
        } else {
            for y in 0..1usize << cfg.s {
                clauses.push(killers(x, y).into_iter().map(sel).collect());
            }
        }
    }
    let selectors: Vec<i32> = (0..pool.len()).map(sel).collect();
    at_most(&selectors, cfg.m_max, &mut next_var, &mut clauses);
    crate::dimacs::DimacsDocument::new(next_var as usize - 1, clauses, None)
}

/// Sequential-counter cardinality constraint: at most `k` of `selectors`.
fn at_most(selectors: &[i32], k: usize, next_var: &mut i32, clauses: &mut Vec<Vec<i32>>) {
    let p = selectors.len();
    if k >= p {
        return;
    }
    if k == 0 {
        clauses.extend(selectors.iter().map(|&s| vec![-s]));
        return;
    }
    let base = *next_var;
    *next_var += ((p - 1) * k) as i32;
    let reg = |i: usize, j: usize| base + (i * k + j) as i32;
    clauses.push(vec![-selectors[0], reg(0, 0)]);
    for j in 1..k {
        clauses.push(vec![-reg(0, j)]);
    }
    for i in 1..p - 1 {
        clauses.push(vec![-selectors[i], reg(i, 0)]);
        clauses.push(vec![-reg(i - 1, 0), reg(i, 0)]);
        for j in 1..k {
            clauses.push(vec![-selectors[i], -reg(i - 1, j - 1), reg(i, j)]);
            clauses.push(vec![-reg(i - 1, j), reg(i, j)]);
        }
    }
    for i in 1..p {
        clauses.push(vec![-selectors[i], -reg(i - 1, k - 1)]);
    }
}
