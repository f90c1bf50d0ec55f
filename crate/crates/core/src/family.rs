//! Catalog of superpotential families.
//!
//! Each family is a classical superpotential affine in the translational
//! parameter, `W0(x, m) = k0(x) + m k1(x)`, together with the closed-form
//! deformation terms `W1±` that solve the Bernoulli equation
//! `W' + W^2 - k1 W = 0` and satisfy the algebraic compatibility condition.
//! Seven families deform nontrivially; the linear and inverse-m cases are
//! provably trivial-only and the complex-exponential case is non-Hermitian.
//!
//! All derivatives here are hand-derived closed forms, not differences;
//! residual checks at the 1e-10 level depend on that.

use crate::complex::{Complex, I};
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Relative guard below which a deformation denominator counts as vanished:
/// `|den| < POLE_GUARD * (1 + |num|)`.
pub const POLE_GUARD: f64 = 1e-12;

/// Truncation half-width used for unbounded domains when sampling or
/// discretizing (overridable by passing an explicit grid).
pub const DOMAIN_TRUNCATION: f64 = 20.0;

/// The nine catalog families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// `W0 = (b/c) tanh(cx) - d/cosh(cx) + m c tanh(cx)` on the real line.
    ScarfHyperbolic,
    /// `W0 = (b/c) coth(cx) - d/sinh(cx) + m c coth(cx)` on the half line.
    GenPoschlTeller,
    /// `W0 = ±b/c + d exp(∓cx) ± m c` on the real line (Morse-type).
    ShiftedExponential,
    /// `W0 = (b/2) x + d/x + m/x` on the half line.
    RadialOscillator,
    /// `W0 = b x + d` on the real line; no nontrivial deformation exists.
    Linear,
    /// `W0 = (b/c) tan(cx) + d/cos(cx) - m c tan(cx)` on `(-pi/2c, pi/2c)`.
    ScarfTrigonometric,
    /// `W0 = -(b/c) cot(cx) + d/sin(cx) + m c cot(cx)` on `(0, pi/c)`.
    PoschlTellerTrigonometric,
    /// `W0 = ∓ i b/c + d exp(∓icx) ± m i c`; complex-valued, non-Hermitian.
    ComplexExponential,
    /// `W0 = q/m + m/x` on the half line (q stored in the `b` slot);
    /// no nontrivial deformation exists.
    InverseM,
}

impl FamilyId {
    pub const ALL: [FamilyId; 9] = [
        FamilyId::ScarfHyperbolic,
        FamilyId::GenPoschlTeller,
        FamilyId::ShiftedExponential,
        FamilyId::RadialOscillator,
        FamilyId::Linear,
        FamilyId::ScarfTrigonometric,
        FamilyId::PoschlTellerTrigonometric,
        FamilyId::ComplexExponential,
        FamilyId::InverseM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::ScarfHyperbolic => "scarf-hyperbolic",
            FamilyId::GenPoschlTeller => "gen-poschl-teller",
            FamilyId::ShiftedExponential => "shifted-exponential",
            FamilyId::RadialOscillator => "radial-oscillator",
            FamilyId::Linear => "linear",
            FamilyId::ScarfTrigonometric => "scarf-trigonometric",
            FamilyId::PoschlTellerTrigonometric => "poschl-teller-trigonometric",
            FamilyId::ComplexExponential => "complex-exponential",
            FamilyId::InverseM => "inverse-m",
        }
    }

    /// Parse a kebab-case (or snake_case) family name.
    pub fn parse(name: &str) -> Option<FamilyId> {
        let name = name.replace('_', "-");
        FamilyId::ALL.iter().copied().find(|f| f.name() == name)
    }

    /// `false` for the two families with no nontrivial deformation terms.
    pub fn deformable(self) -> bool {
        !matches!(self, FamilyId::Linear | FamilyId::InverseM)
    }

    /// `false` only for the complex-exponential family, whose partner
    /// potentials are non-Hermitian.
    pub fn hermitian(self) -> bool {
        !matches!(self, FamilyId::ComplexExponential)
    }

    /// Families whose definition uses the scale constant `c > 0`.
    pub fn uses_scale(self) -> bool {
        !matches!(
            self,
            FamilyId::RadialOscillator | FamilyId::Linear | FamilyId::InverseM
        )
    }

    /// Families with a ± branch selector.
    pub fn uses_sign(self) -> bool {
        matches!(
            self,
            FamilyId::ShiftedExponential | FamilyId::ComplexExponential
        )
    }

    /// Human-readable `W0` formula for catalog listings.
    pub fn w0_formula(self) -> &'static str {
        match self {
            FamilyId::ScarfHyperbolic => "(b/c)tanh(cx) - d/cosh(cx) + mc tanh(cx)",
            FamilyId::GenPoschlTeller => "(b/c)coth(cx) - d/sinh(cx) + mc coth(cx)",
            FamilyId::ShiftedExponential => "s b/c + d exp(-s cx) + s mc",
            FamilyId::RadialOscillator => "(b/2)x + d/x + m/x",
            FamilyId::Linear => "b x + d",
            FamilyId::ScarfTrigonometric => "(b/c)tan(cx) + d/cos(cx) - mc tan(cx)",
            FamilyId::PoschlTellerTrigonometric => "-(b/c)cot(cx) + d/sin(cx) + mc cot(cx)",
            FamilyId::ComplexExponential => "-s i b/c + d exp(-s icx) + s i mc",
            FamilyId::InverseM => "q/m + m/x",
        }
    }
}

/// Branch selector for the ± families (and for the two deformation terms).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn from_value(v: f64) -> Option<Sign> {
        if v == 1.0 {
            Some(Sign::Plus)
        } else if v == -1.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// Selects one of the two deformation terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// The `±1` that appears in the denominators as `2m ± 1`.
    pub(crate) fn offset(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Real parameter record shared by every family.
///
/// `m` is the translational parameter, normalized so the partner transform
/// is `m -> m - 1`. Which of `b`, `c`, `d` a family actually uses follows
/// its `W0` formula; `sign` only matters for the exponential families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub sign: Sign,
    pub m: f64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            b: 0.0,
            c: 1.0,
            d: 0.0,
            sign: Sign::Plus,
            m: 0.0,
        }
    }
}

impl FamilyParams {
    pub fn validate(&self, family: FamilyId) -> Result<()> {
        if ![self.b, self.c, self.d, self.m]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if family.uses_scale() && self.c <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "{} requires c > 0, got c = {}",
                family.name(),
                self.c
            )));
        }
        if family == FamilyId::Linear && self.b == 0.0 {
            return Err(Error::InvalidParams(
                "linear family requires a nonzero slope b".into(),
            ));
        }
        if family == FamilyId::InverseM && self.m == 0.0 {
            return Err(Error::InvalidParams(
                "inverse-m family requires m != 0".into(),
            ));
        }
        Ok(())
    }

    /// Same parameters at a translated `m`.
    pub fn with_m(&self, m: f64) -> FamilyParams {
        FamilyParams { m, ..*self }
    }

    /// One rung down the ladder, `f(m) = m - 1`.
    pub fn stepped(&self) -> FamilyParams {
        self.with_m(self.m - 1.0)
    }
}

/// Open interval on which a family's superpotential lives; infinite bounds
/// are `±f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainSpec {
    pub lower: f64,
    pub upper: f64,
}

impl DomainSpec {
    pub fn contains(&self, x: f64) -> bool {
        x.is_finite() && x > self.lower && x < self.upper
    }
}

/// Natural domain of a family for the given parameters.
pub fn domain(family: FamilyId, params: &FamilyParams) -> DomainSpec {
    use std::f64::consts::{FRAC_PI_2, PI};
    match family {
        FamilyId::ScarfHyperbolic
        | FamilyId::ShiftedExponential
        | FamilyId::Linear
        | FamilyId::ComplexExponential => DomainSpec {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
        },
        FamilyId::GenPoschlTeller | FamilyId::RadialOscillator | FamilyId::InverseM => DomainSpec {
            lower: 0.0,
            upper: f64::INFINITY,
        },
        FamilyId::ScarfTrigonometric => DomainSpec {
            lower: -FRAC_PI_2 / params.c,
            upper: FRAC_PI_2 / params.c,
        },
        FamilyId::PoschlTellerTrigonometric => DomainSpec {
            lower: 0.0,
            upper: PI / params.c,
        },
    }
}

/// Domain with infinite ends truncated at [`DOMAIN_TRUNCATION`].
pub fn truncated_domain(family: FamilyId, params: &FamilyParams) -> (f64, f64) {
    let dom = domain(family, params);
    (
        dom.lower.max(-DOMAIN_TRUNCATION),
        dom.upper.min(DOMAIN_TRUNCATION),
    )
}

/// Default sampling/discretization grid for a family.
pub fn default_grid(family: FamilyId, params: &FamilyParams, n: usize) -> Result<Grid> {
    let (a, b) = truncated_domain(family, params);
    Grid::new(a, b, n)
}

/// `n` uniform samples strictly inside the (truncated) domain.
pub fn sample_points(family: FamilyId, params: &FamilyParams, n: usize) -> Vec<f64> {
    match default_grid(family, params, n) {
        Ok(g) => g.points().collect(),
        Err(_) => Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// W0 = k0 + m k1 and its derivative, per family
// ---------------------------------------------------------------------------

pub(crate) fn k0(family: FamilyId, p: &FamilyParams, x: f64) -> f64 {
    let (b, c, d) = (p.b, p.c, p.d);
    let s = p.sign.value();
    match family {
        FamilyId::ScarfHyperbolic => (b / c) * (c * x).tanh() - d / (c * x).cosh(),
        FamilyId::GenPoschlTeller => (b / c) / (c * x).tanh() - d / (c * x).sinh(),
        FamilyId::ShiftedExponential => s * b / c + d * (-s * c * x).exp(),
        FamilyId::RadialOscillator => 0.5 * b * x + d / x,
        FamilyId::Linear => b * x + d,
        FamilyId::ScarfTrigonometric => (b / c) * (c * x).tan() + d / (c * x).cos(),
        FamilyId::PoschlTellerTrigonometric => -(b / c) / (c * x).tan() + d / (c * x).sin(),
        FamilyId::ComplexExponential => unreachable!("complex family uses the complex mode"),
        FamilyId::InverseM => p.b / p.m,
    }
}

pub(crate) fn k0_prime(family: FamilyId, p: &FamilyParams, x: f64) -> f64 {
    let (b, c, d) = (p.b, p.c, p.d);
    let s = p.sign.value();
    match family {
        FamilyId::ScarfHyperbolic => {
            let sech = 1.0 / (c * x).cosh();
            b * sech * sech + c * d * (c * x).tanh() * sech
        }
        FamilyId::GenPoschlTeller => {
            let csch = 1.0 / (c * x).sinh();
            -b * csch * csch + c * d * csch / (c * x).tanh()
        }
        FamilyId::ShiftedExponential => -s * c * d * (-s * c * x).exp(),
        FamilyId::RadialOscillator => 0.5 * b - d / (x * x),
        FamilyId::Linear => b,
        FamilyId::ScarfTrigonometric => {
            let sec = 1.0 / (c * x).cos();
            b * sec * sec + c * d * (c * x).tan() * sec
        }
        FamilyId::PoschlTellerTrigonometric => {
            let csc = 1.0 / (c * x).sin();
            b * csc * csc - c * d * csc / (c * x).tan()
        }
        FamilyId::ComplexExponential => unreachable!("complex family uses the complex mode"),
        FamilyId::InverseM => 0.0,
    }
}

pub(crate) fn k1(family: FamilyId, p: &FamilyParams, x: f64) -> f64 {
    let c = p.c;
    match family {
        FamilyId::ScarfHyperbolic => c * (c * x).tanh(),
        FamilyId::GenPoschlTeller => c / (c * x).tanh(),
        FamilyId::ShiftedExponential => p.sign.value() * c,
        FamilyId::RadialOscillator | FamilyId::InverseM => 1.0 / x,
        FamilyId::Linear => 0.0,
        FamilyId::ScarfTrigonometric => -c * (c * x).tan(),
        FamilyId::PoschlTellerTrigonometric => c / (c * x).tan(),
        FamilyId::ComplexExponential => unreachable!("complex family uses the complex mode"),
    }
}

pub(crate) fn k1_prime(family: FamilyId, p: &FamilyParams, x: f64) -> f64 {
    let c = p.c;
    match family {
        FamilyId::ScarfHyperbolic => {
            let sech = 1.0 / (c * x).cosh();
            c * c * sech * sech
        }
        FamilyId::GenPoschlTeller => {
            let csch = 1.0 / (c * x).sinh();
            -c * c * csch * csch
        }
        FamilyId::ShiftedExponential | FamilyId::Linear => 0.0,
        FamilyId::RadialOscillator | FamilyId::InverseM => -1.0 / (x * x),
        FamilyId::ScarfTrigonometric => {
            let sec = 1.0 / (c * x).cos();
            -c * c * sec * sec
        }
        FamilyId::PoschlTellerTrigonometric => {
            let csc = 1.0 / (c * x).sin();
            -c * c * csc * csc
        }
        FamilyId::ComplexExponential => unreachable!("complex family uses the complex mode"),
    }
}

pub(crate) fn w0(family: FamilyId, p: &FamilyParams, x: f64) -> f64 {
    k0(family, p, x) + p.m * k1(family, p, x)
}

pub(crate) fn w0_prime(family: FamilyId, p: &FamilyParams, x: f64) -> f64 {
    k0_prime(family, p, x) + p.m * k1_prime(family, p, x)
}

/// The split `W0 = k0 + m k1` evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpotentialParts {
    pub k0: f64,
    pub k1: f64,
    pub w0: f64,
}

/// Evaluate the base superpotential split of a family at `x`.
pub fn superpotential_parts(
    family: FamilyId,
    params: &FamilyParams,
    x: f64,
) -> Result<SuperpotentialParts> {
    params.validate(family)?;
    if family == FamilyId::ComplexExponential {
        return Err(Error::ComplexFamily);
    }
    if !domain(family, params).contains(x) {
        return Err(Error::OutOfDomain { x });
    }
    let (k0, k1) = (k0(family, params, x), k1(family, params, x));
    Ok(SuperpotentialParts {
        k0,
        k1,
        w0: k0 + params.m * k1,
    })
}

// ---------------------------------------------------------------------------
// Deformation terms W1± (closed forms) and their derivatives
// ---------------------------------------------------------------------------

/// The coupling whose vanishing kills the deformation: `d` for the four
/// trigonometric/hyperbolic families, `b` for the radial oscillator.
pub(crate) fn deformation_coupling(family: FamilyId, p: &FamilyParams) -> f64 {
    match family {
        FamilyId::RadialOscillator => p.b,
        FamilyId::ShiftedExponential | FamilyId::ComplexExponential => 1.0,
        _ => p.d,
    }
}

/// Numerator and denominator of `W1` for `branch`, with the parameter value
/// `m` given explicitly so callers can probe `m - 1`.
pub(crate) fn w1_num_den(
    family: FamilyId,
    p: &FamilyParams,
    m: f64,
    branch: Branch,
    x: f64,
) -> (f64, f64) {
    let (b, c, d) = (p.b, p.c, p.d);
    let s = branch.offset();
    match family {
        FamilyId::ScarfHyperbolic => (
            2.0 * c * c * d * (c * x).cosh(),
            2.0 * b + c * c * (2.0 * m + s) + 2.0 * c * d * (c * x).sinh(),
        ),
        FamilyId::GenPoschlTeller => (
            2.0 * c * c * d * (c * x).sinh(),
            2.0 * c * d * (c * x).cosh() - 2.0 * b - c * c * (2.0 * m + s),
        ),
        FamilyId::ShiftedExponential => (p.sign.value() * c, 1.0),
        FamilyId::RadialOscillator => (2.0 * b * x, b * x * x - s - 2.0 * d - 2.0 * m),
        FamilyId::ScarfTrigonometric => (
            2.0 * c * c * d * (c * x).cos(),
            2.0 * c * d * (c * x).sin() + 2.0 * b - c * c * (2.0 * m + s),
        ),
        FamilyId::PoschlTellerTrigonometric => (
            2.0 * c * c * d * (c * x).sin(),
            2.0 * b - c * c * (2.0 * m + s) - 2.0 * c * d * (c * x).cos(),
        ),
        FamilyId::Linear | FamilyId::InverseM | FamilyId::ComplexExponential => {
            unreachable!("no real closed-form deformation for this family")
        }
    }
}

fn w1_num_den_primes(
    family: FamilyId,
    p: &FamilyParams,
    _m: f64,
    _branch: Branch,
    x: f64,
) -> (f64, f64) {
    let (b, c, d) = (p.b, p.c, p.d);
    match family {
        FamilyId::ScarfHyperbolic => (
            2.0 * c * c * c * d * (c * x).sinh(),
            2.0 * c * c * d * (c * x).cosh(),
        ),
        FamilyId::GenPoschlTeller => (
            2.0 * c * c * c * d * (c * x).cosh(),
            2.0 * c * c * d * (c * x).sinh(),
        ),
        FamilyId::ShiftedExponential => (0.0, 0.0),
        FamilyId::RadialOscillator => (2.0 * b, 2.0 * b * x),
        FamilyId::ScarfTrigonometric => (
            -2.0 * c * c * c * d * (c * x).sin(),
            2.0 * c * c * d * (c * x).cos(),
        ),
        FamilyId::PoschlTellerTrigonometric => (
            2.0 * c * c * c * d * (c * x).cos(),
            2.0 * c * c * d * (c * x).sin(),
        ),
        FamilyId::Linear | FamilyId::InverseM | FamilyId::ComplexExponential => {
            unreachable!("no real closed-form deformation for this family")
        }
    }
}

/// `W1` for one branch at explicit `m`; `Err(PoleAt)` when the denominator
/// vanishes within the relative guard.
pub(crate) fn w1(
    family: FamilyId,
    p: &FamilyParams,
    m: f64,
    branch: Branch,
    x: f64,
) -> Result<f64> {
    if deformation_coupling(family, p) == 0.0 {
        return Ok(0.0);
    }
    let (num, den) = w1_num_den(family, p, m, branch, x);
    if den.abs() < POLE_GUARD * (1.0 + num.abs()) {
        return Err(Error::PoleAt { x });
    }
    Ok(num / den)
}

/// Analytic derivative of `W1` (quotient rule on the closed form).
pub(crate) fn w1_prime(
    family: FamilyId,
    p: &FamilyParams,
    m: f64,
    branch: Branch,
    x: f64,
) -> Result<f64> {
    if deformation_coupling(family, p) == 0.0 {
        return Ok(0.0);
    }
    let (num, den) = w1_num_den(family, p, m, branch, x);
    if den.abs() < POLE_GUARD * (1.0 + num.abs()) {
        return Err(Error::PoleAt { x });
    }
    let (nump, denp) = w1_num_den_primes(family, p, m, branch, x);
    Ok((nump * den - num * denp) / (den * den))
}

/// Denominator of one branch's deformation term at the family's own `m`:
/// the quantity whose domain zeros the singularity verdict brackets.
/// `None` where the closed form has no denominator (constant terms,
/// trivial-only families).
pub fn w1_denominator(
    family: FamilyId,
    params: &FamilyParams,
    branch: Branch,
    x: f64,
) -> Option<f64> {
    match family {
        FamilyId::ScarfHyperbolic
        | FamilyId::GenPoschlTeller
        | FamilyId::RadialOscillator
        | FamilyId::ScarfTrigonometric
        | FamilyId::PoschlTellerTrigonometric => {
            Some(w1_num_den(family, params, params.m, branch, x).1)
        }
        _ => None,
    }
}

/// Both deformation terms at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationTerms {
    pub w1_plus: f64,
    pub w1_minus: f64,
}

fn check_deformable_real(family: FamilyId, params: &FamilyParams, x: f64) -> Result<()> {
    params.validate(family)?;
    if !family.deformable() {
        return Err(Error::TrivialOnlyFamily);
    }
    if family == FamilyId::ComplexExponential {
        return Err(Error::ComplexFamily);
    }
    if !domain(family, params).contains(x) {
        return Err(Error::OutOfDomain { x });
    }
    Ok(())
}

/// Evaluate `W1+` and `W1-` at `x` from the closed forms.
pub fn deformation_terms(
    family: FamilyId,
    params: &FamilyParams,
    x: f64,
) -> Result<DeformationTerms> {
    check_deformable_real(family, params, x)?;
    Ok(DeformationTerms {
        w1_plus: w1(family, params, params.m, Branch::Plus, x)?,
        w1_minus: w1(family, params, params.m, Branch::Minus, x)?,
    })
}

/// Analytic x-derivatives of `W1+` and `W1-` at `x`.
pub fn deformation_term_derivatives(
    family: FamilyId,
    params: &FamilyParams,
    x: f64,
) -> Result<DeformationTerms> {
    check_deformable_real(family, params, x)?;
    Ok(DeformationTerms {
        w1_plus: w1_prime(family, params, params.m, Branch::Plus, x)?,
        w1_minus: w1_prime(family, params, params.m, Branch::Minus, x)?,
    })
}

// ---------------------------------------------------------------------------
// Singularity analysis
// ---------------------------------------------------------------------------

/// Outcome of the singularity scan over the whole domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularityVerdict {
    Free,
    Singular { witness: f64 },
}

/// Decide whether both `W1±` denominators stay away from zero on the whole
/// open domain; otherwise return a bracketed root located by bisection.
///
/// Every denominator in the catalog is `A + B g(x)` with `g` strictly
/// monotone on the domain, so a root exists iff the denominator changes
/// sign between the domain-edge limits, and then it is unique.
pub fn singularity_verdict(family: FamilyId, params: &FamilyParams) -> Result<SingularityVerdict> {
    params.validate(family)?;
    if !family.deformable() {
        return Err(Error::TrivialOnlyFamily);
    }
    match family {
        FamilyId::ShiftedExponential | FamilyId::ComplexExponential => {
            return Ok(SingularityVerdict::Free)
        }
        _ => {}
    }
    if deformation_coupling(family, params) == 0.0 {
        return Ok(SingularityVerdict::Free);
    }
    for branch in [Branch::Plus, Branch::Minus] {
        if let Some(witness) = denominator_root(family, params, branch) {
            return Ok(SingularityVerdict::Singular { witness });
        }
    }
    Ok(SingularityVerdict::Free)
}

/// Signs of the denominator at the lower/upper domain edge (limits for
/// infinite or divergent edges).
fn den_edge_signs(family: FamilyId, p: &FamilyParams, branch: Branch) -> (f64, f64) {
    let (b, c, d) = (p.b, p.c, p.d);
    let s = branch.offset();
    match family {
        FamilyId::ScarfHyperbolic => (-d.signum(), d.signum()),
        FamilyId::GenPoschlTeller => {
            let at0 = 2.0 * c * d - 2.0 * b - c * c * (2.0 * p.m + s);
            (at0.signum(), d.signum())
        }
        FamilyId::RadialOscillator => {
            let at0 = -s - 2.0 * d - 2.0 * p.m;
            (at0.signum(), b.signum())
        }
        FamilyId::ScarfTrigonometric => {
            let base = 2.0 * b - c * c * (2.0 * p.m + s);
            ((base - 2.0 * c * d).signum(), (base + 2.0 * c * d).signum())
        }
        FamilyId::PoschlTellerTrigonometric => {
            let base = 2.0 * b - c * c * (2.0 * p.m + s);
            ((base - 2.0 * c * d).signum(), (base + 2.0 * c * d).signum())
        }
        _ => unreachable!("edge signs only needed for denominator-bearing families"),
    }
}

/// Unique root of the branch denominator inside the open domain, if any,
/// located to 1e-12 absolute.
fn denominator_root(family: FamilyId, p: &FamilyParams, branch: Branch) -> Option<f64> {
    let (lo_sign, hi_sign) = den_edge_signs(family, p, branch);
    if lo_sign * hi_sign >= 0.0 {
        return None;
    }
    let den = |x: f64| w1_num_den(family, p, p.m, branch, x).1;
    let dom = domain(family, p);

    // Finite bracket: bounded edges are used as-is (the denominator extends
    // continuously onto them); infinite edges are reached by doubling.
    let mut lo = if dom.lower.is_finite() {
        dom.lower
    } else {
        -1.0 / p.c.max(1e-6)
    };
    let mut hi = if dom.upper.is_finite() {
        dom.upper
    } else {
        1.0 / p.c.max(1e-6)
    };
    if !dom.lower.is_finite() {
        let mut step = lo.abs().max(1.0);
        for _ in 0..200 {
            if den(lo).signum() == lo_sign {
                break;
            }
            step *= 2.0;
            lo -= step;
        }
    }
    if !dom.upper.is_finite() {
        let mut step = hi.abs().max(1.0);
        for _ in 0..200 {
            if den(hi).signum() == hi_sign {
                break;
            }
            step *= 2.0;
            hi += step;
        }
    }
    debug_assert!(den(lo).signum() == lo_sign && den(hi).signum() == hi_sign);

    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if den(mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

// ---------------------------------------------------------------------------
// Complex evaluation mode (complex-exponential family only)
// ---------------------------------------------------------------------------

/// `W0 = k0 + m k1` over the complex codomain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexParts {
    pub k0: Complex,
    pub k1: Complex,
    pub w0: Complex,
}

/// Complex-mode base superpotential of the complex-exponential family.
pub fn superpotential_parts_complex(params: &FamilyParams, x: f64) -> Result<ComplexParts> {
    params.validate(FamilyId::ComplexExponential)?;
    let s = params.sign.value();
    let (b, c, d) = (params.b, params.c, params.d);
    let k0 = -I.scale(s * b / c) + (-I.scale(s * c * x)).exp().scale(d);
    let k1 = I.scale(s * c);
    Ok(ComplexParts {
        k0,
        k1,
        w0: k0 + k1.scale(params.m),
    })
}

/// Complex-mode deformation terms; both equal `± i c` for every `x` and `m`.
pub fn deformation_terms_complex(params: &FamilyParams) -> Result<(Complex, Complex)> {
    params.validate(FamilyId::ComplexExponential)?;
    let w1 = I.scale(params.sign.value() * params.c);
    Ok((w1, w1))
}
