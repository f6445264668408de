//! Structure-preserving spectral toolkit for the incompressible Euler
//! equations on the flat 2-torus `[0, 2π)²`.
//!
//! The library keeps both representations of ideal fluid motion side by
//! side and certifies, numerically, that they carry the same Hamiltonian
//! structure:
//!
//! * the **Eulerian** side: divergence-free velocity fields `u` evolving by
//!   `∂u/∂t + ∇_u u = −grad p`, together with the Poisson bracket
//!   `{f,g}(v) = ⟨dg(v), ∇_{df(v)} v⟩ − ⟨df(v), ∇_{dg(v)} v⟩` on
//!   functionals of `u`;
//! * the **Lagrangian** side: volume-preserving flow maps `η` with material
//!   velocities `v`, evolving by the geodesic spray of the right-invariant
//!   L² metric, with the group-level bracket built from covariant partial
//!   derivatives;
//! * the **reduction map** `π(η, v) = v ∘ η⁻¹` connecting the two, which
//!   the harness checks is a Poisson map and intertwines the two flows
//!   (the commutative diagram).
//!
//! Everything is pseudo-spectral on an `n × n` grid with an active band
//! limit `kmax ≤ n/8`, so products and inner products of band-limited
//! fields are exact up to round-off and the structural identities (Jacobi,
//! adjointness, Casimir behaviour) are round-off-level tests rather than
//! discretization tests.
//!
//! Entry points: [`field`] for grids and fields, [`hodge`] for the
//! Helmholtz/Leray split, [`observables`] and [`bracket`] for the Poisson
//! calculus, [`flowmap`] for the group side, [`dynamics`] for the two
//! flows, [`oracle`] for the independent Galerkin cross-check, and
//! [`harness`] for config-driven verification suites. The `examples/`
//! directory has one runnable program per capability.

pub mod bracket;
pub mod dynamics;
pub mod error;
pub mod fft;
pub mod field;
pub mod flowmap;
pub mod harness;
pub mod hodge;
pub mod interp;
pub mod measure;
pub mod observables;
pub mod oracle;
pub mod rng;
pub mod tol;

pub use error::{Error, Result};
pub use field::{DivFreeField, Grid, ScalarField, VectorField};
pub use flowmap::{FlowMap, TangentPoint};
pub use interp::InterpMode;
pub use observables::Observable;
