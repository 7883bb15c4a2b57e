//! Toolkit for CNF encodings of the parity function with non-deterministic
//! (guess) variables.
//!
//! The crate provides:
//! - packed truth tables and full-sensitivity checks ([`boolfn`]),
//! - clauses, CNFs and encodings with existential-projection semantics
//!   ([`cnf`]),
//! - the canonical, block-chain and Tseitin generators ([`generators`]),
//! - depth-3 expansion (OR of CNFs) and its converses ([`sigma3`]),
//! - isolated-assignment, critical-clause and weight analysis plus bound
//!   checkers ([`analysis`]),
//! - exhaustive and CEGAR search for minimum-size encodings ([`search`]),
//! - DIMACS I/O, an external SAT solver client and the command line
//!   ([`dimacs`], [`solver`], [`cli`]).

mod bits;
pub mod analysis;
pub mod boolfn;
pub mod cli;
pub mod cnf;
pub mod dimacs;
mod error;
pub mod generators;
pub mod search;
pub mod sigma3;
pub mod solver;

pub use boolfn::{Assignment, BoolFn};
pub use cnf::{Clause, Cnf, Encoding, Literal};
pub use error::{Error, ParseError, ParseErrorKind, SolverError};
