//! Chamberlin–Courant winner determination for profiles that are
//! single-crossing on a line, a tree or a two-dimensional grid.
//!
//! Solvers return a [`SolveResult`] in the caller's voter and candidate
//! labels (0-based). [`solver::SolverRegistry`] selects a strategy by name.

pub mod assignment;
pub mod bench;
pub mod cost;
pub mod error;
pub mod generators;
pub mod grid;
pub mod instance;
pub mod line;
pub mod oracle;
pub mod profile;
pub mod solver;
pub mod structure;
pub mod tree;
pub mod validation;

pub use assignment::{canonicalize, cost, Assignment, SolveResult, Stats};
pub use cost::Objective;
pub use error::{Error, Result};
pub use instance::{normalize_to_root_order, Instance};
pub use profile::{borda_rho, CandidateRelabel, PreferenceProfile, Rho};
pub use solver::{Solution, SolveOptions, Solver, SolverRegistry};
pub use structure::{GridShape, LineOrder, RootedTree, Structure};
