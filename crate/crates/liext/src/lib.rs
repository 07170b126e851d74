//! Symbolic workbench for Lie algebra realisations by first order
//! differential operators: closure checking, linear extensions by ancillary
//! variables, jet prolongations, and the discovery and verification of
//! absolute and relative differential invariants.

pub mod ansatz;
pub mod audit;
pub mod chart;
pub mod corpus;
pub mod dsl;
pub mod error;
pub mod expr;
pub mod extension;
pub mod field;
pub mod invariant;
pub mod jet;
pub mod linalg;
pub mod report;
pub mod runner;
pub mod sample;

pub use ansatz::{poly_span, Ansatz};
pub use audit::{Claim, Entry, Expectation, ExtContext, Finding, Verdict};
pub use chart::Chart;
pub use corpus::{cases, CorpusCase};
pub use dsl::{parse_problem, AnsatzSpec, Problem, Task};
pub use error::{Error, Result};
pub use expr::{parse_expr, Atom, Expr, FuncAtom, Monomial, Poly, Rat};
pub use extension::{ExtensionFamily, ExtensionProblem};
pub use field::{parse_field, structure_constants, VectorField};
pub use invariant::{
    ancillary_rate, classify, functionally_independent, jacobian_rank, solve_scaled,
    Classification, ScaledSolution,
};
pub use jet::{JetSpace, MultiIndex};
pub use report::{Format, Report, Section};
pub use runner::{corpus_report, run_problem};
