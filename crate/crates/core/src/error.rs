//! Error type shared by every module of the crate.

/// Everything that can go wrong while evaluating the catalog, deriving
/// constants, building potentials, or diagonalizing operators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The evaluation point lies outside the family's open domain.
    #[error("x = {x} is outside the family domain")]
    OutOfDomain { x: f64 },

    /// The family is complex-valued; use the complex evaluation mode.
    #[error("family is complex-valued; use the complex evaluation mode")]
    ComplexFamily,

    /// The family admits no nontrivial deformation terms.
    #[error("family admits only the trivial deformation")]
    TrivialOnlyFamily,

    /// A deformation-term denominator vanishes at this point.
    #[error("deformation term has a pole at x = {x}")]
    PoleAt { x: f64 },

    /// The numeric Bernoulli integration left the trusted range.
    #[error("Bernoulli trajectory blew up near x = {x}")]
    BlowUp { x: f64 },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("adaptive quadrature failed to converge")]
    QuadratureFailure,

    /// The constants relation divides by a coupling that is zero here.
    #[error("constants relation is degenerate for these parameters")]
    DegenerateDenominator,

    /// The compatibility condition has no nontrivial solution.
    #[error("no nontrivial deformation constants satisfy the compatibility condition")]
    NoNontrivialSolution,

    /// A potential sample inside the grid is not evaluable.
    #[error("potential has a pole on the sampling grid")]
    PoleOnGrid,

    /// Spectral operations require singularity-free parameters.
    #[error("parameters are not singularity-free (witness x = {witness})")]
    SingularFamilyParams { witness: f64 },

    /// A ladder rung reached parameters that are not singularity-free.
    #[error("ladder rung {rung} has singular parameters (witness x = {witness})")]
    SingularAtRung { rung: usize, witness: f64 },

    /// Spectral operations reject non-Hermitian families.
    #[error("family is non-Hermitian; spectral operations are not defined")]
    NonHermitianFamily,

    /// Parameter record violates a family invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Grid construction arguments are unusable.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
