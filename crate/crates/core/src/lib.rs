//! Exact Bezout identities in `Q(i)[z1, ..., zn]`.

pub mod arith;
pub mod cli;
pub mod error;
pub mod glue;
pub mod groebner;
pub mod json;
pub mod multipoly;
pub mod param;
pub mod parse;
pub mod verify;

pub use arith::{GaussianRational, ModulusBound, Rational};
pub use error::{Error, Result};
pub use glue::{
    cauchy_bound, choose_pk, run_glue, run_glue_with, transition_matrix, DiskSchedule, GlueStage,
    GlueTrace, LocalSolutionProvider,
};
pub use groebner::{buchberger, reduce, solve_bezout, BezoutCertificate, TermOrder, TrackedBasis};
pub use multipoly::{Monomial, MultiPoly, PolyTuple, Polydisk};
pub use param::{annihilation_residual, apply_shift, difference_matrix, AntisymMatrix};
