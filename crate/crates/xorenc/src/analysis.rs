//! Isolation and weight analysis of CNFs and encodings, the clause-count and
//! width bound formulas, and the implied depth-3 size bounds.
//!
//! All weights and thresholds use exact rational arithmetic. Comparisons
//! against 2^(non-integer) are done exactly when one side is an integer and
//! the other a rational multiple of a rational power of two; only bounds that
//! mix several such powers fall back to log-domain floats, guarded by a hard
//! failure inside a 2^-40 band so rounding can never decide a verdict.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, BigUint, One, Signed, ToPrimitive};

use crate::boolfn::{Assignment, BoolFn};
use crate::cnf::{Clause, Cnf, Encoding};
use crate::error::Error;
use crate::sigma3::{branch_at, ceil_log2, MAX_EXPANSION_S};

/// Half-width of the log-domain comparison band: 2^-40.
pub const LOG_GUARD_BAND: f64 = 1.0 / 1099511627776.0;

/// Per-assignment weight diagnostics: the satisfying branch, the histogram
/// N_l of critical-clause lengths, the weight sum(N_l / l), and
/// T = sum((N_l / n) * 2^l / l).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightReport {
    pub x: Assignment,
    pub branch: u32,
    pub lengths: BTreeMap<usize, usize>,
    pub weight: BigRational,
    pub t_value: BigRational,
}

impl WeightReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "x={} branch={} weight={} t={}\n",
            self.x, self.branch, self.weight, self.t_value
        );
        out.push_str("lengths");
        for (l, count) in &self.lengths {
            write!(out, " {l}:{count}").unwrap();
        }
        out.push('\n');
        out
    }
}

/// The bound formulas at given (n, s): what clause count and width any
/// encoding of an n-variable parity must respect, and what the block
/// construction achieves.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundsReport {
    pub n: usize,
    pub s: usize,
    pub epsilon: BigRational,
    /// (1/2 - 2^-(eps+1)) * (s+1+eps) * 2^(n/(s+1+eps)); None when
    /// s > n ln2 - 1 - eps and the bound is trivial.
    pub lower_m_limited: Option<f64>,
    /// n/(s+1).
    pub lower_k: f64,
    /// max(3n - 9, 0).
    pub lower_m_unlimited: usize,
    /// 4(s+1) * 2^(n/(s+1)).
    pub upper_m_limited: f64,
    /// 3 + n/(s+1).
    pub upper_k: f64,
    /// 4n, met by the chain construction at s = n-1.
    pub upper_m_unlimited: usize,
}

impl BoundsReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} s={} eps={}\n", self.n, self.s, self.epsilon);
        out.push_str(&format!("lower_k {:.6}\n", self.lower_k));
        match self.lower_m_limited {
            Some(v) => out.push_str(&format!("lower_m_limited {v:.6}\n")),
            None => out.push_str("lower_m_limited not-applicable\n"),
        }
        out.push_str(&format!("lower_m_unlimited {}\n", self.lower_m_unlimited));
        out.push_str(&format!("upper_k {:.6}\n", self.upper_k));
        out.push_str(&format!("upper_m_limited {:.6}\n", self.upper_m_limited));
        out.push_str(&format!("upper_m_unlimited {}\n", self.upper_m_unlimited));
        out
    }
}

/// Outcome of one counting bound: the observed count, the bound value (float
/// for display only; pass is decided exactly), and the verdict.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct BoundCheck {
    pub count: usize,
    pub bound: f64,
    pub pass: bool,
}

/// Satisfying assignments all of whose Hamming neighbors falsify the CNF, in
/// index order.
pub fn isolated_satisfying(f_cnf: &Cnf) -> Result<Vec<Assignment>, Error> {
    Ok(isolated_points(&f_cnf.to_boolfn()?))
}

/// Ones of `f` all of whose Hamming neighbors are zeros, in index order.
pub fn isolated_points(f: &BoolFn) -> Vec<Assignment> {
    let n = f.n();
    let mut out = Vec::new();
    for idx in 0..1u32 << n {
        if f.value(idx) && (0..n).all(|b| !f.value(idx ^ (1 << b))) {
            out.push(Assignment::new(n, idx).expect("index in range"));
        }
    }
    out
}

/// The clause witnessing that flipping bit i falsifies the CNF: its unique
/// true literal at x sits on variable i. Returns the shortest such clause,
/// ties broken by clause order (sorted variable indices, positive literal
/// first).
pub fn critical_clause(f_cnf: &Cnf, x: &Assignment, i: u32) -> Result<Clause, Error> {
    let n = f_cnf.n_vars();
    if x.n() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: x.n(),
        });
    }
    if i == 0 || i as usize > n {
        return Err(Error::VarOutOfRange { var: i, limit: n });
    }
    if !f_cnf.eval_index(x.index()) {
        return Err(Error::NotAccepted);
    }
    let mut best: Option<&Clause> = None;
    for clause in f_cnf.clauses() {
        let mut true_lits = clause.literals().iter().filter(|l| l.eval_in(x.index()));
        match (true_lits.next(), true_lits.next()) {
            (Some(sole), None) if sole.var() == i => {}
            _ => continue,
        }
        if best.map_or(true, |b| (clause.width(), clause) < (b.width(), b)) {
            best = Some(clause);
        }
    }
    best.cloned().ok_or(Error::NoCriticalClause { var: i })
}

/// Smallest guess assignment whose branch accepts x, with that branch
/// materialized.
fn first_satisfying_branch(e: &Encoding, x: &Assignment) -> Result<(u32, Cnf), Error> {
    if x.n() != e.n() {
        return Err(Error::ArityMismatch {
            expected: e.n(),
            got: x.n(),
        });
    }
    if e.s() > MAX_EXPANSION_S {
        return Err(Error::ExpansionTooLarge {
            s: e.s(),
            max: MAX_EXPANSION_S,
        });
    }
    // Joint indices are packed into u32.
    let n_vars = e.n() + e.s();
    if n_vars > 31 {
        return Err(Error::ArityOutOfRange { n: n_vars, max: 31 });
    }
    for j in 0..1u32 << e.s() {
        if e.cnf().eval_index(x.index() | j << e.n()) {
            return Ok((j, branch_at(e, j)));
        }
    }
    Err(Error::NotAccepted)
}

/// Critical clause of an encoding: taken from the first branch that accepts
/// x. A missing clause means the encoded function is not sensitive at (x, i).
pub fn critical_clause_enc(
    e: &Encoding,
    x: &Assignment,
    i: u32,
) -> Result<(u32, Clause), Error> {
    let (j, branch) = first_satisfying_branch(e, x)?;
    Ok((j, critical_clause(&branch, x, i)?))
}

/// Critical-clause length histogram of x over all n directions, with the
/// weight and T sums, all exact.
pub fn weight_report(e: &Encoding, x: &Assignment) -> Result<WeightReport, Error> {
    let n = e.n();
    let (branch, f_branch) = first_satisfying_branch(e, x)?;
    let mut lengths: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 1..=n as u32 {
        let clause = critical_clause(&f_branch, x, i)?;
        *lengths.entry(clause.width()).or_insert(0) += 1;
    }
    debug_assert_eq!(lengths.values().sum::<usize>(), n);
    let weight = lengths
        .iter()
        .map(|(&l, &count)| BigRational::new(count.into(), (l as u64).into()))
        .sum();
    let t_value = lengths
        .iter()
        .map(|(&l, &count)| {
            BigRational::new(BigInt::from(count) << l, BigInt::from((n * l) as u64))
        })
        .sum();
    Ok(WeightReport {
        x: *x,
        branch,
        lengths,
        weight,
        t_value,
    })
}

/// Splits f's accepted inputs by weight: H gets those with weight at least
/// s+1+eps, L the rest.
pub fn partition_heavy_light(
    e: &Encoding,
    f: &BoolFn,
    eps: &BigRational,
) -> Result<(Vec<Assignment>, Vec<Assignment>), Error> {
    if !e.encodes(f)? {
        return Err(Error::DoesNotEncode);
    }
    if !f.is_fully_sensitive() {
        return Err(Error::NotFullySensitive);
    }
    let threshold = BigRational::from_integer(((e.s() + 1) as u64).into()) + eps;
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    for idx in f.ones_iter() {
        let x = Assignment::new(f.n(), idx).expect("index in range");
        let report = weight_report(e, &x)?;
        if report.weight >= threshold {
            heavy.push(x);
        } else {
            light.push(x);
        }
    }
    Ok((heavy, light))
}

/// Isolated-count bound for width-k CNFs: at most 2^(n - n/k) isolated
/// satisfying assignments. Tight at parity.
pub fn check_isolated_bound(f_cnf: &Cnf, k: usize) -> Result<BoundCheck, Error> {
    if k == 0 || f_cnf.max_width() > k {
        return Err(Error::WidthExceedsBound {
            width: f_cnf.max_width(),
            k,
        });
    }
    let n = f_cnf.n_vars();
    let count = isolated_satisfying(f_cnf)?.len();
    let exp = BigRational::new(((n * k - n) as u64).into(), (k as u64).into());
    Ok(BoundCheck {
        count,
        bound: 2f64.powf(n as f64 - n as f64 / k as f64),
        pass: le_scaled_pow2(count, &BigRational::one(), &exp),
    })
}

/// Weighted isolation bound: at most 2^(n - mu) isolated satisfying
/// assignments of weight at least mu.
pub fn check_weight_bound(f_cnf: &Cnf, mu: &BigRational) -> Result<BoundCheck, Error> {
    let n = f_cnf.n_vars();
    let mut count = 0;
    for x in isolated_satisfying(f_cnf)? {
        let mut weight = BigRational::from_integer(0.into());
        for i in 1..=n as u32 {
            // Isolation guarantees a critical clause in every direction.
            let clause = critical_clause(f_cnf, &x, i)?;
            weight += BigRational::new(BigInt::one(), (clause.width() as u64).into());
        }
        if weight >= *mu {
            count += 1;
        }
    }
    let exp = BigRational::from_integer((n as u64).into()) - mu;
    Ok(BoundCheck {
        count,
        bound: 2f64.powf(n as f64 - mu.to_f64().unwrap_or(f64::NAN)),
        pass: le_scaled_pow2(count, &BigRational::one(), &exp),
    })
}

/// Evaluates every bound formula at (n, s); eps defaults to 1/n.
pub fn bounds_report(n: usize, s: usize, eps: Option<BigRational>) -> BoundsReport {
    assert!(n >= 1, "need at least one input variable");
    let epsilon =
        eps.unwrap_or_else(|| BigRational::new(BigInt::one(), (n as u64).into()));
    let eps_f = epsilon.to_f64().expect("finite rational");
    let nf = n as f64;
    let s1 = (s + 1) as f64;
    let side_holds = (s as f64) <= nf * std::f64::consts::LN_2 - 1.0 - eps_f;
    let lower_m_limited = side_holds.then(|| {
        let coeff = 0.5 - 2f64.powf(-(1.0 + eps_f));
        coeff * (s1 + eps_f) * 2f64.powf(nf / (s1 + eps_f))
    });
    BoundsReport {
        n,
        s,
        epsilon,
        lower_m_limited,
        lower_k: nf / s1,
        lower_m_unlimited: (3 * n).saturating_sub(9),
        upper_m_limited: 4.0 * s1 * 2f64.powf(nf / s1),
        upper_k: 3.0 + nf / s1,
        upper_m_unlimited: 4 * n,
    }
}

/// Exact integer form of the width lower bound k >= n/(s+1).
pub fn width_bound_holds(k: usize, n: usize, s: usize) -> bool {
    k * (s + 1) >= n
}

/// Clause-count check against the limited-nondeterminism lower bound;
/// vacuously true when the bound is not applicable at (n, s).
pub fn m_meets_limited_lower(m: usize, report: &BoundsReport) -> Result<bool, Error> {
    match report.lower_m_limited {
        None => Ok(true),
        Some(bound) => guarded_ge(m as f64, bound),
    }
}

/// Which depth-3 shape an implied size bound is for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sigma3Mode {
    Formula,
    Circuit,
}

/// Size any t-branch depth-3 structure computing an n-variable parity must
/// have: branch count plus what the clause-count bound forces on the merged
/// encoding (halved per branch pair in circuit mode, where clauses are
/// copied).
pub fn implied_sigma3_bound(n: usize, t: usize, mode: Sigma3Mode) -> f64 {
    assert!(t >= 1, "need at least one branch");
    let report = bounds_report(n, ceil_log2(t), None);
    let m_bound = report.lower_m_limited.unwrap_or(0.0);
    match mode {
        Sigma3Mode::Formula => t as f64 + m_bound,
        Sigma3Mode::Circuit => t as f64 + m_bound / (2.0 * t as f64),
    }
}

/// Exact test count <= coeff * 2^exp over the rationals; coeff must be
/// positive.
pub fn le_scaled_pow2(count: usize, coeff: &BigRational, exp: &BigRational) -> bool {
    if count == 0 {
        return true;
    }
    assert!(coeff.is_positive(), "coefficient must be positive");
    let q = exp
        .denom()
        .to_usize()
        .expect("exponent denominator fits usize");
    let a = coeff.numer().to_biguint().expect("positive numerator");
    let b = coeff.denom().to_biguint().expect("positive denominator");
    let lhs = num::pow(BigUint::from(count) * b, q);
    let rhs = num::pow(a, q);
    let p = exp
        .numer()
        .to_isize()
        .expect("exponent numerator fits isize");
    if p >= 0 {
        lhs <= rhs << p as usize
    } else {
        lhs << (-p) as usize <= rhs
    }
}

/// Log-domain >= for positive reals, refusing to answer when the operands
/// are within 2^-40 of each other in log2.
pub fn guarded_ge(lhs: f64, rhs: f64) -> Result<bool, Error> {
    if lhs <= 0.0 || rhs <= 0.0 {
        return Ok(lhs >= rhs);
    }
    let (la, lb) = (lhs.log2(), rhs.log2());
    if (la - lb).abs() <= LOG_GUARD_BAND {
        return Err(Error::GuardBand { lhs, rhs });
    }
    Ok(la > lb)
}
