//! Deformed translational shape-invariant potentials.
//!
//! A classical superpotential affine in the translational parameter,
//! `W0(x, m) = k0(x) + m k1(x)`, can be deformed by two extra terms
//! `W = W0 + W1+ - W1-`, each solving the Bernoulli equation
//! `W' + W^2 - k1 W = 0`, such that the partner potentials keep the
//! simple form `V = V0 - 2W1+'`, `Ṽ = Ṽ0 - 2W1-'` and shape invariance
//! under `m -> m - 1` survives. This crate holds:
//!
//! - [`family`]: the catalog of nine families, closed-form deformation
//!   terms, and singularity-domain analysis;
//! - [`bernoulli`]: Bernoulli solvers (numeric and via quadratures),
//!   constant derivation, and residual evaluators for every condition
//!   equation;
//! - [`potential`]: partner-pair assembly, the shape-invariance constant
//!   `R`, and the Darboux zero mode;
//! - [`spectral`]: a Sturm-bisection eigensolver for the discretized
//!   Hamiltonians, partner isospectrality and ladder checks.

pub mod bernoulli;
pub mod complex;
pub mod error;
pub mod family;
pub mod grid;
pub mod potential;
pub mod spectral;

pub use error::{Error, Result};
pub use family::{DomainSpec, FamilyId, FamilyParams, Sign, SingularityVerdict};
pub use grid::Grid;
