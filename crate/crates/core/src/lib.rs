//! Exact construction of breadth-one D-invariant polynomial subspaces and of
//! coalescing point schemes whose evaluation functionals converge to the
//! subspace's differential functionals.
//!
//! Everything except the floating-point [`discretization::sweep`] is exact
//! rational arithmetic.

pub mod discretization;
pub mod enumerate;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod params;
pub mod poly;
pub mod rational;
pub mod subspace;

pub use discretization::{
    expansion_check, points_scheme_a, points_scheme_b, stencil, sweep, ExpansionReport, Scheme,
    Stencil, SweepRow, SymbolicPointSet,
};
pub use error::{Error, Result};
pub use params::{GeneralSpec, ParamTable};
pub use poly::{apply_diff, DiffOperator, Exponent, Polynomial};
pub use rational::Rational;
pub use subspace::{
    breadth, build_explicit, build_general, build_recursive, check_closure, check_span_closure,
    degrees, enumerate_tau_solutions, span_contains, BasisSequence, ClosureReport, GammaSolution,
};
