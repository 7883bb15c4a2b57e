#![allow(dead_code)]

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use xorenc::cnf::{Clause, Cnf, Encoding, Literal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_clause(rng: &mut ChaCha8Rng, n_vars: usize, width: usize) -> Clause {
    let vars = index::sample(rng, n_vars, width);
    Clause::new(
        vars.iter()
            .map(|v| Literal::new(v as u32 + 1, rng.gen_bool(0.5))),
    )
    .expect("sampled variables are distinct")
}

/// Random CNF with n in 3..=12 and clause widths capped between 2 and 6.
pub fn random_cnf(rng: &mut ChaCha8Rng) -> Cnf {
    let n = rng.gen_range(3..=12);
    let k = rng.gen_range(2..=n.min(6));
    let m = rng.gen_range(1..=2 * n);
    let mut cnf = Cnf::new(n);
    for _ in 0..m {
        let width = rng.gen_range(1..=k);
        cnf.add(random_clause(rng, n, width))
            .expect("clause drawn over the CNF's variables");
    }
    cnf
}

/// Random encoding with the given arity, guess-count, and clause-count
/// ranges; widths are capped at 4 (or the variable count if smaller).
pub fn random_encoding(
    rng: &mut ChaCha8Rng,
    n_range: RangeInclusive<usize>,
    s_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
) -> Encoding {
    let n = rng.gen_range(n_range);
    let s = rng.gen_range(s_range);
    let m = rng.gen_range(m_range);
    let total = n + s;
    let mut cnf = Cnf::new(total);
    for _ in 0..m {
        let width = rng.gen_range(1..=total.min(4));
        cnf.add(random_clause(rng, total, width))
            .expect("clause drawn over the encoding's variables");
    }
    Encoding::new(n, s, cnf).expect("CNF built over n+s variables")
}

/// Unique path under the per-target temp dir.
pub fn scratch_path(name: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let id = COUNTER.fetch_add(1, Ordering::Relaxed);
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{id}-{name}", std::process::id()))
}

/// Writes an executable script and returns its path.
pub fn write_executable(name: &str, body: &str) -> PathBuf {
    use std::os::unix::fs::PermissionsExt;
    let path = scratch_path(name);
    std::fs::write(&path, body).expect("temp dir is writable");
    std::fs::set_permissions(&path, std::fs::Permissions::from_mode(0o755))
        .expect("chmod on a file we just wrote");
    path
}

/// Complete DPLL solver over the CLI protocol: reads one DIMACS file argument,
/// prints an s-line and, when satisfiable, a v-line. Deterministic.
pub fn brute_solver_script() -> PathBuf {
    write_executable(
        "solve.py",
        r#"#!/usr/bin/env python3
import sys

sys.setrecursionlimit(100000)


def parse(path):
    n = 0
    clauses = []
    for raw in open(path):
        t = raw.split()
        if not t or t[0] == 'c':
            continue
        if t[0] == 'p':
            n = int(t[2])
            continue
        lits = [int(x) for x in t]
        if lits and lits[-1] == 0:
            lits.pop()
        clauses.append(lits)
    return n, clauses


def simplify(clauses, assign):
    out = []
    for cl in clauses:
        sat = False
        free = []
        for lit in cl:
            val = assign.get(abs(lit))
            if val is None:
                free.append(lit)
            elif val == (lit > 0):
                sat = True
                break
        if sat:
            continue
        if not free:
            return None
        out.append(free)
    return out


def dpll(clauses, assign):
    while True:
        reduced = simplify(clauses, assign)
        if reduced is None:
            return None
        units = [cl[0] for cl in reduced if len(cl) == 1]
        if not units:
            break
        for lit in units:
            var, val = abs(lit), lit > 0
            if assign.setdefault(var, val) != val:
                return None
    if not reduced:
        return assign
    lit = reduced[0][0]
    for val in (lit > 0, lit < 0):
        trial = dict(assign)
        trial[abs(lit)] = val
        res = dpll(clauses, trial)
        if res is not None:
            return res
    return None


def main():
    n, clauses = parse(sys.argv[1])
    model = dpll(clauses, {})
    if model is None:
        print('s UNSATISFIABLE')
        return
    lits = [str(v if model.get(v, False) else -v) for v in range(1, n + 1)]
    print('s SATISFIABLE')
    print('v ' + ' '.join(lits + ['0']))


main()
"#,
    )
}
