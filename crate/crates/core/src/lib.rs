//! Numerical verification laboratory for Hamiltonian-stationary Lagrangian
//! submanifolds of constant curvature in complex space forms.
//!
//! The library certifies, from first principles, that the explicit
//! constructions in the catalog are Lagrangian (or Legendrian at the lift
//! level), have the advertised constant curvature, carry the adapted
//! second-fundamental-form pattern, and are Hamiltonian-stationary
//! (`div JH = 0`, cross-checked by a first-variation oracle in flat ambient).
//!
//! Modules:
//!
//! - [`ambient`] — the three ambient geometries (`C^n`, the unit sphere
//!   `S^{2n+1}(1)` lifting `CP^n(4)`, the anti-de-Sitter quadric
//!   `H_1^{2n+1}(-1)` lifting `CH^n(-4)`) and their Hermitian algebra.
//! - [`jets`] — value/gradient/Hessian of closed-form immersions by central
//!   differences with Richardson refinement, with analytic overrides.
//! - [`catalog`] — the registry of explicit immersion families with
//!   parameter schemas, admissible domains and advertised properties.
//! - [`diffgeo`] — induced metric, Christoffel symbols, second fundamental
//!   form, mean curvature, curvature residuals, `div JH`, relative nullity,
//!   and the first-variation oracle.
//! - [`twistor`] — twisted/warped product twistor functions, every PDE
//!   residual of the over-determined system, and the scaling transforms.
//! - [`specfun`] — complex Gamma, Bessel J of complex order by series, and
//!   the oscillatory quadrature used by the Bessel surface.
//! - [`verify`] — the batch verification runner and report emitter consumed
//!   by the CLI.

// Tensor index loops read better than iterator chains throughout the
// geometry code.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::explicit_counter_loop)]

pub mod ambient;
pub mod catalog;
pub mod diffgeo;
pub mod jets;
pub mod linalg;
pub mod specfun;
pub mod twistor;
pub mod verify;

pub use num_complex::Complex64;
