//! Subprocess solver runs against scripted adversaries and a real DPLL
//! implementation, plus counterexample-guided search driven through it.

mod common;

use xorenc::boolfn::BoolFn;
use xorenc::dimacs::{write_dimacs, DimacsDocument};
use xorenc::generators::{block_parity_encoding, canonical_cnf};
use xorenc::search::{find_encoding, SearchConfig, SearchMode};
use xorenc::solver::solve_external;
use xorenc::{Error, SolverError};

fn par3_doc() -> DimacsDocument {
    let cnf = canonical_cnf(&BoolFn::parity(3).unwrap());
    DimacsDocument::from_cnf(&cnf)
}

fn satisfies(doc: &DimacsDocument, model: &[bool]) -> bool {
    doc.clauses().iter().all(|clause| {
        clause
            .iter()
            .any(|&lit| model[lit.unsigned_abs() as usize - 1] == (lit > 0))
    })
}

#[test]
fn lying_unsat_verdict_is_caught_by_brute_force() {
    let script = common::write_executable(
        "lying-unsat.sh",
        "#!/bin/sh\necho \"s UNSATISFIABLE\"\n",
    );
    let err = solve_external(&par3_doc(), script.to_str().unwrap());
    match err {
        Err(Error::Solver(SolverError::Disagreement { verdict })) => {
            assert_eq!(verdict, "UNSAT");
        }
        other => panic!("expected disagreement, got {other:?}"),
    }
}

#[test]
fn sat_verdict_with_falsifying_model_is_rejected() {
    let script = common::write_executable(
        "bad-model.sh",
        "#!/bin/sh\necho \"s SATISFIABLE\"\necho \"v 1 2 -3 0\"\n",
    );
    let err = solve_external(&par3_doc(), script.to_str().unwrap());
    assert!(matches!(
        err,
        Err(Error::Solver(SolverError::ModelMismatch))
    ));
}

#[test]
fn sat_verdict_with_partial_model_is_rejected() {
    let script = common::write_executable(
        "partial-model.sh",
        "#!/bin/sh\necho \"s SATISFIABLE\"\necho \"v 1 -2 0\"\n",
    );
    let err = solve_external(&par3_doc(), script.to_str().unwrap());
    assert!(matches!(
        err,
        Err(Error::Solver(SolverError::IncompleteModel))
    ));
}

#[test]
fn chatter_without_a_verdict_is_rejected() {
    let script = common::write_executable(
        "chatter.sh",
        "#!/bin/sh\necho \"c warming up\"\necho \"done.\"\n",
    );
    let err = solve_external(&par3_doc(), script.to_str().unwrap());
    assert!(matches!(err, Err(Error::Solver(SolverError::NoVerdict))));
}

#[test]
fn nonexecutable_file_is_a_launch_error() {
    let path = common::scratch_path("not-executable.sh");
    std::fs::write(&path, "#!/bin/sh\necho \"s UNSATISFIABLE\"\n").unwrap();
    let err = solve_external(&par3_doc(), path.to_str().unwrap());
    assert!(matches!(err, Err(Error::Solver(SolverError::Launch { .. }))));
}

// Solvers following the DIMACS convention exit 10 on SAT; only stdout counts.
#[test]
fn nonzero_exit_status_does_not_mask_a_good_answer() {
    let script = common::write_executable(
        "exit-ten.sh",
        "#!/bin/sh\necho \"s SATISFIABLE\"\necho \"v 1 -2 -3 0\"\nexit 10\n",
    );
    let out = solve_external(&par3_doc(), script.to_str().unwrap()).unwrap();
    assert!(out.sat);
    assert_eq!(out.model, Some(vec![true, false, false]));
}

#[test]
fn real_solver_models_a_satisfiable_encoding() {
    let solver = common::brute_solver_script();
    let e = block_parity_encoding(4, 2, None).unwrap();
    let doc = DimacsDocument::parse(&write_dimacs(&e)).unwrap();
    let out = solve_external(&doc, solver.to_str().unwrap()).unwrap();
    assert!(out.sat);
    let model = out.model.unwrap();
    assert_eq!(model.len(), 6);
    assert!(satisfies(&doc, &model));
    // Any satisfying assignment projects onto an odd-weight input.
    assert_eq!(model[..4].iter().filter(|&&b| b).count() % 2, 1);
}

#[test]
fn real_solver_refutes_an_unsatisfiable_formula() {
    let solver = common::brute_solver_script();
    let doc = DimacsDocument::new(1, vec![vec![1], vec![-1]], None).unwrap();
    let out = solve_external(&doc, solver.to_str().unwrap()).unwrap();
    assert!(!out.sat);
    assert!(out.model.is_none());

    // All eight maxterms over three variables block every assignment.
    let maxterms: Vec<Vec<i32>> = (0..8u32)
        .map(|bits| {
            (1..=3i32)
                .map(|v| if bits >> (v - 1) & 1 == 1 { -v } else { v })
                .collect()
        })
        .collect();
    let doc = DimacsDocument::new(3, maxterms, None).unwrap();
    let out = solve_external(&doc, solver.to_str().unwrap()).unwrap();
    assert!(!out.sat);
}

#[test]
fn cegar_finds_the_unique_unit_encoding() {
    let solver = common::brute_solver_script();
    let mut cfg = SearchConfig::new(BoolFn::parity(1).unwrap(), 0, 2, 1);
    cfg.mode = SearchMode::Cegar;
    let result = find_encoding(&cfg, Some(solver.to_str().unwrap())).unwrap();
    assert!(!result.exhausted);
    let e = result.found.expect("a one-clause encoding exists");
    // The only clause set of width 1 computing x1 is {(x1)}.
    assert_eq!(e.clause_count(), 1);
    let clause = e.cnf().clauses().next().unwrap();
    let lits = clause.literals();
    assert_eq!(lits.len(), 1);
    assert_eq!((lits[0].var(), lits[0].is_negated()), (1, false));
}

#[test]
fn cegar_synthesizes_through_guess_variables() {
    let solver = common::brute_solver_script();
    let parity2 = BoolFn::parity(2).unwrap();
    let mut cfg = SearchConfig::new(parity2.clone(), 1, 4, 2);
    cfg.mode = SearchMode::Cegar;
    let result = find_encoding(&cfg, Some(solver.to_str().unwrap())).unwrap();
    let e = result.found.expect("the chain construction fits this budget");
    assert!(e.encodes(&parity2).unwrap());
    assert_eq!((e.n(), e.s()), (2, 1));
    assert!(e.clause_count() <= 4);
    assert!(e.max_width() <= 2);
}

#[test]
fn cegar_never_claims_exhaustion() {
    let solver = common::brute_solver_script();
    // No width-1 clause set computes two-variable parity: whatever survives
    // unit clauses is a subcube, and the odd-weight set is not one.
    let mut cfg = SearchConfig::new(BoolFn::parity(2).unwrap(), 0, 2, 1);
    cfg.mode = SearchMode::Cegar;
    let result = find_encoding(&cfg, Some(solver.to_str().unwrap())).unwrap();
    assert!(result.found.is_none());
    assert!(!result.exhausted);
}
