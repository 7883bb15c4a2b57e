//! External SAT-solver subprocess client.
//!
//! The solver binary receives a DIMACS file as its single argument and must
//! print an `s SATISFIABLE` / `s UNSATISFIABLE` verdict line, plus `v` model
//! lines when satisfiable. Verdicts are never trusted blindly: models are
//! re-checked against the formula, and instances small enough to brute force
//! are cross-checked exhaustively.

use std::io::Write;
use std::process::Command;

use crate::boolfn::Assignment;
use crate::dimacs::DimacsDocument;
use crate::error::{Error, SolverError};

/// Variable budget for the exhaustive cross-check of solver verdicts.
pub const BRUTE_FORCE_VARS: usize = 20;

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub sat: bool,
    /// `model[v-1]` is the value of variable `v`; present exactly when sat.
    pub model: Option<Vec<bool>>,
}

impl SolveOutcome {
    /// Model as an [`Assignment`] when it fits in one.
    pub fn model_assignment(&self) -> Option<Assignment> {
        let bits = self.model.as_ref()?;
        Assignment::from_bools(bits).ok()
    }
}

pub fn solve_external(doc: &DimacsDocument, solver_path: &str) -> Result<SolveOutcome, Error> {
    if solver_path.is_empty() {
        return Err(Error::SolverNotConfigured);
    }
    let mut file = tempfile::Builder::new()
        .prefix("xorenc")
        .suffix(".cnf")
        .tempfile()
        .map_err(SolverError::Input)?;
    file.write_all(doc.to_text().as_bytes())
        .map_err(SolverError::Input)?;
    file.flush().map_err(SolverError::Input)?;
    let output = Command::new(solver_path)
        .arg(file.path())
        .output()
        .map_err(|source| SolverError::Launch {
            path: solver_path.to_string(),
            source,
        })?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    let outcome = parse_solver_output(doc, &stdout)?;
    if doc.n_vars() <= BRUTE_FORCE_VARS && brute_force_sat(doc) != outcome.sat {
        let verdict = if outcome.sat { "SAT" } else { "UNSAT" };
        return Err(SolverError::Disagreement { verdict }.into());
    }
    Ok(outcome)
}

fn parse_solver_output(doc: &DimacsDocument, stdout: &str) -> Result<SolveOutcome, Error> {
    let mut sat: Option<bool> = None;
    let mut model_lits: Vec<i32> = Vec::new();
    let mut model_done = false;
    for line in stdout.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            sat = match rest.trim() {
                "SATISFIABLE" => Some(true),
                "UNSATISFIABLE" => Some(false),
                other => {
                    return Err(SolverError::Output(format!("s-line verdict `{other}`")).into())
                }
            };
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                if model_done {
                    return Err(
                        SolverError::Output("model literals after terminating 0".into()).into(),
                    );
                }
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| SolverError::Output(format!("v-line token `{tok}`")))?;
                if lit == 0 {
                    model_done = true;
                } else {
                    model_lits.push(lit);
                }
            }
        }
    }
    let Some(sat) = sat else {
        return Err(SolverError::NoVerdict.into());
    };
    if !sat {
        return Ok(SolveOutcome { sat, model: None });
    }
    let mut model = vec![None; doc.n_vars()];
    for lit in model_lits {
        let var = lit.unsigned_abs() as usize;
        if var == 0 || var > doc.n_vars() {
            return Err(SolverError::Output(format!("model literal {lit} out of range")).into());
        }
        model[var - 1] = Some(lit > 0);
    }
    let model: Option<Vec<bool>> = model.into_iter().collect();
    let Some(model) = model else {
        return Err(SolverError::IncompleteModel.into());
    };
    for clause in doc.clauses() {
        let satisfied = clause
            .iter()
            .any(|&lit| model[lit.unsigned_abs() as usize - 1] == (lit > 0));
        if !satisfied {
            return Err(SolverError::ModelMismatch.into());
        }
    }
    Ok(SolveOutcome {
        sat,
        model: Some(model),
    })
}

fn brute_force_sat(doc: &DimacsDocument) -> bool {
    debug_assert!(doc.n_vars() <= BRUTE_FORCE_VARS);
    (0u64..1 << doc.n_vars()).any(|bits| {
        doc.clauses().iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| (bits >> (lit.unsigned_abs() - 1) & 1 == 1) == (lit > 0))
        })
    })
}
