//! Exact De Rham calculus for diffeological spaces presented by two
//! polynomial plots.
//!
//! A space is described by an ambient coordinate system, a list of
//! polynomial equations cutting out the underlying set, and a generating
//! family of exactly two polynomial plots.  Differential forms on the
//! space are represented as pairs of horizontal forms on the plot
//! domains whose difference vanishes on every chart of the fibered
//! product of the plots.  All arithmetic is over exact rationals, so
//! ranks, kernels and cohomology dimensions are equalities, not
//! approximations.
//!
//! The crate is organised along the pipeline:
//!
//! * [`ratpoly`] — exact rational coefficients, canonical multivariate
//!   polynomials, polynomial maps, and an expression parser.
//! * [`linalg`] — dense exact linear algebra: rank, kernel bases, column
//!   span membership.
//! * [`exterior`] — Cartan calculus on Euclidean domains: wedge product,
//!   exterior derivative, pullback of forms.
//! * [`diffeology`] — space presentations, plot verification,
//!   horizontality witnesses and horizontal-form bases.
//! * [`mv`] — the Mayer–Vietoris construction: the difference morphism,
//!   gluing, bases of the glued form spaces, truncated cohomology and the
//!   exactness audit.
//! * [`cli`] — the batch front end of the `glueform` binary: presentation
//!   files, form files, deterministic reports.

pub mod cli;
pub mod diffeology;
mod error;
pub mod exterior;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod linalg;
pub mod mv;
pub mod ratpoly;

pub use error::Error;
pub use exterior::DifferentialForm;
pub use ratpoly::{PolyMap, Polynomial, Rational, VarContext};
