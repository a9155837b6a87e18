//! Exact symbolic differential geometry on parallelizable manifolds.
//!
//! Everything here is pure algebra over Gaussian rationals and needs only
//! `alloc`: polynomials in named real symbols, differential forms over a
//! global coframe, the exterior derivative from structure equations,
//! connections whose Christoffel symbols are pinned down by declared linear
//! constraints, Clifford multiplication on spinors, flag-preserving bases with
//! lazily computed duals, and Cartan's test for linear exterior differential
//! systems on the frame bundle.
//!
//! File formats and the command-line driver live in the `coframe` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod basis;
pub mod connection;
pub mod eds;
mod error;
pub mod exterior;
pub mod manifold;
pub mod scalar;
pub mod spinor;

pub use basis::{AffineBasis, Basis, EquationSink, Insertion, SimpleExpansion};
pub use connection::{Connection, ConnectionMode, Frame, RiemannianManifold, Tensor};
pub use eds::{CartanReport, EdsProblem};
pub use error::{Error, Result};
pub use exterior::{hook, pairing, parse_form, Form, Monomial};
pub use manifold::{FrameManifold, Manifold};
pub use scalar::{linear_solve, GaussRat, LinearSolution, Poly, Session, Symbol};
pub use spinor::{CliffordTable, Matrix, Spinor};
