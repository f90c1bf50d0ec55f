//! Bernoulli-equation machinery behind the deformation terms.
//!
//! Both deformation terms solve `W' + W^2 - k1(x) W = 0`, which two
//! quadratures solve in closed form: with `E = exp(∫ k1)` and `F = ∫ E`,
//! every solution is `W = c1 E / (c2 + c1 F)`, i.e. a one-parameter family
//! in the ratio `r = c2/c1`. Substituting that form into the algebraic
//! compatibility condition makes it *linear* in the two unknown ratios,
//! which is what both the per-family constant relations and the generic
//! two-point solver exploit.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::family::{self, Branch, FamilyId, FamilyParams, POLE_GUARD};
use crate::grid::Grid;

/// One residual evaluation; the reported quantity is
/// `|value| / max(1, scale)` where `scale` is the largest contributing term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub x: f64,
    pub value: f64,
    pub scale: f64,
}

impl ResidualSample {
    pub fn relative(&self) -> f64 {
        self.value.abs() / self.scale.max(1.0)
    }
}

fn max_abs(terms: &[f64]) -> f64 {
    terms.iter().fold(0.0f64, |a, t| a.max(t.abs()))
}

// ---------------------------------------------------------------------------
// Numeric solution (fixed-step RK4, both directions)
// ---------------------------------------------------------------------------

fn rk4_step(k1: &impl Fn(f64) -> f64, x: f64, w: f64, h: f64) -> f64 {
    let f = |x: f64, w: f64| k1(x) * w - w * w;
    let s1 = f(x, w);
    let s2 = f(x + 0.5 * h, w + 0.5 * h * s1);
    let s3 = f(x + 0.5 * h, w + 0.5 * h * s2);
    let s4 = f(x + h, w + h * s3);
    w + h * (s1 + 2.0 * s2 + 2.0 * s3 + s4) / 6.0
}

const BLOWUP_LIMIT: f64 = 1e12;

/// Integrate `W' = k1 W - W^2` from `(x0, w0_init)` to every grid point,
/// marching left and right with single RK4 steps between adjacent points.
///
/// Returns `(x, W)` samples in ascending `x`. Crossing a solution pole is
/// reported as `BlowUp` at the last trusted point.
pub fn bernoulli_solve_numeric(
    k1_sampler: impl Fn(f64) -> f64,
    x0: f64,
    w0_init: f64,
    grid: &Grid,
) -> Result<Vec<(f64, f64)>> {
    if x0 < grid.lower() || x0 > grid.upper() {
        return Err(Error::InvalidGrid(format!("x0 = {x0} outside grid range")));
    }
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(grid.len());

    // backward sweep, then reverse
    let mut w = w0_init;
    let mut x = x0;
    let mut backward: Vec<(f64, f64)> = Vec::new();
    for target in grid
        .points()
        .filter(|&t| t < x0)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
    {
        w = rk4_step(&k1_sampler, x, w, target - x);
        if !w.is_finite() || w.abs() > BLOWUP_LIMIT {
            return Err(Error::BlowUp { x: target });
        }
        x = target;
        backward.push((x, w));
    }
    out.extend(backward.into_iter().rev());

    // forward sweep (a grid point exactly at x0 is the initial value)
    w = w0_init;
    x = x0;
    for target in grid.points().filter(|&t| t >= x0) {
        if target > x {
            w = rk4_step(&k1_sampler, x, w, target - x);
            if !w.is_finite() || w.abs() > BLOWUP_LIMIT {
                return Err(Error::BlowUp { x: target });
            }
            x = target;
        }
        out.push((x, w));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Closed-form solution by two quadratures
// ---------------------------------------------------------------------------

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`; handles `a > b` by sign flip.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return adaptive_simpson(f, b, a, tol).map(|v| -v);
    }
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        if depth > 50 {
            return Err(Error::QuadratureFailure);
        }
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    if ![fa, fm, fb].iter().all(|v| v.is_finite()) {
        return Err(Error::QuadratureFailure);
    }
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, 0)
}

/// General two-quadrature Bernoulli solution
/// `W(x) = c1 exp(K(x)) / (c2 + c1 ∫_{x_ref}^x exp(K(y)) dy)`,
/// with `K` the supplied antiderivative of `k1`.
pub struct BernoulliSolution<K> {
    pub c1: f64,
    pub c2: f64,
    k1_antiderivative: K,
    x_ref: f64,
}

impl<K: Fn(f64) -> f64> BernoulliSolution<K> {
    pub fn new(c1: f64, c2: f64, k1_antiderivative: K, x_ref: f64) -> Self {
        BernoulliSolution {
            c1,
            c2,
            k1_antiderivative,
            x_ref,
        }
    }

    /// Evaluate the logarithmic derivative; the inner quadrature uses
    /// adaptive Simpson at 1e-12 absolute.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if self.c1 == 0.0 {
            // log argument is the constant c2
            return Ok(0.0);
        }
        let k = &self.k1_antiderivative;
        let e = k(x).exp();
        let f = adaptive_simpson(&|y: f64| k(y).exp(), self.x_ref, x, 1e-12)?;
        let den = self.c2 + self.c1 * f;
        let num = self.c1 * e;
        if den.abs() < POLE_GUARD * (1.0 + num.abs()) {
            return Err(Error::PoleAt { x });
        }
        Ok(num / den)
    }
}

// ---------------------------------------------------------------------------
// Per-family quadratures and constant ratios
// ---------------------------------------------------------------------------

/// `(E, F) = (exp(∫k1), ∫exp(∫k1))` in the normalization that matches the
/// catalog's closed forms, so that `W1 = E / (r + F)`.
pub(crate) fn bernoulli_quadratures(family: FamilyId, p: &FamilyParams, x: f64) -> (f64, f64) {
    let c = p.c;
    let s = p.sign.value();
    match family {
        FamilyId::ScarfHyperbolic => ((c * x).cosh(), (c * x).sinh() / c),
        FamilyId::GenPoschlTeller => ((c * x).sinh(), (c * x).cosh() / c),
        FamilyId::ShiftedExponential => {
            let e = (s * c * x).exp();
            (e, e / (s * c))
        }
        FamilyId::RadialOscillator | FamilyId::InverseM => (x, 0.5 * x * x),
        FamilyId::Linear => (1.0, x),
        FamilyId::ScarfTrigonometric => ((c * x).cos(), (c * x).sin() / c),
        FamilyId::PoschlTellerTrigonometric => ((c * x).sin(), -(c * x).cos() / c),
        FamilyId::ComplexExponential => unreachable!("complex family uses the complex mode"),
    }
}

/// Integration-constant ratios that make the compatibility condition hold
/// identically in `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantRatios {
    pub c2_over_c1: f64,
    pub c4_over_c3: f64,
}

impl ConstantRatios {
    fn ratio(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.c2_over_c1,
            Branch::Minus => self.c4_over_c3,
        }
    }
}

/// Stored per-family constant relations.
///
/// `Err(DegenerateDenominator)` when the relation divides by a coupling
/// that is zero; `Err(NoNontrivialSolution)` for the linear and inverse-m
/// families.
pub fn derive_constants(family: FamilyId, params: &FamilyParams) -> Result<ConstantRatios> {
    params.validate(family)?;
    let (b, c, d, m) = (params.b, params.c, params.d, params.m);
    let r = |s: f64| -> Result<f64> {
        match family {
            FamilyId::ScarfHyperbolic => {
                if d == 0.0 {
                    return Err(Error::DegenerateDenominator);
                }
                Ok((2.0 * b + c * c * (2.0 * m + s)) / (2.0 * c * c * d))
            }
            FamilyId::GenPoschlTeller => {
                if d == 0.0 {
                    return Err(Error::DegenerateDenominator);
                }
                Ok(-(2.0 * b + c * c * (2.0 * m + s)) / (2.0 * c * c * d))
            }
            FamilyId::ShiftedExponential | FamilyId::ComplexExponential => Ok(0.0),
            FamilyId::RadialOscillator => {
                if b == 0.0 {
                    return Err(Error::DegenerateDenominator);
                }
                Ok(-(s + 2.0 * d + 2.0 * m) / (2.0 * b))
            }
            FamilyId::ScarfTrigonometric | FamilyId::PoschlTellerTrigonometric => {
                if d == 0.0 {
                    return Err(Error::DegenerateDenominator);
                }
                Ok((2.0 * b - c * c * (2.0 * m + s)) / (2.0 * c * c * d))
            }
            FamilyId::Linear | FamilyId::InverseM => Err(Error::NoNontrivialSolution),
        }
    };
    Ok(ConstantRatios {
        c2_over_c1: r(1.0)?,
        c4_over_c3: r(-1.0)?,
    })
}

/// Probe points for the generic solver: a window of a few characteristic
/// lengths, so the quadratures `E`, `F` stay O(1) and the linear system
/// well conditioned.
fn solver_points(family: FamilyId, params: &FamilyParams, n: usize) -> Vec<f64> {
    let scale = if family.uses_scale() { params.c } else { 1.0 };
    let (lo, hi) = family::truncated_domain(family, params);
    let dom = family::domain(family, params);
    let (wlo, whi) = if dom.lower.is_finite() && dom.upper.is_finite() {
        // bounded: central 60% keeps clear of the secant/cosecant walls
        (lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo))
    } else if dom.lower == 0.0 {
        (0.2 / scale, (2.7 / scale).min(hi))
    } else {
        ((-1.5 / scale).max(lo), (1.5 / scale).min(hi))
    };
    (0..n)
        .map(|i| wlo + (whi - wlo) * (i as f64 + 0.5) / n as f64)
        .collect()
}

/// Solve the algebraic compatibility condition for the two constant ratios
/// from two probe points, then verify the candidate on a spread of
/// independent points.
///
/// With `W1± = E/(r± + F)` the condition is linear in `(Δ, S) =
/// (r- - r+, r+ + r-)`:
/// `2 W0 Δ + k1 S + 2 k1 F - 2 E = 0`.
/// Verification failure is the mechanized no-solution result.
pub fn solve_constants_generic(family: FamilyId, params: &FamilyParams) -> Result<ConstantRatios> {
    params.validate(family)?;
    if family == FamilyId::ComplexExponential {
        return Err(Error::ComplexFamily);
    }
    let rows: Vec<(f64, f64, f64)> = solver_points(family, params, 17)
        .into_iter()
        .map(|x| {
            let (e, f) = bernoulli_quadratures(family, params, x);
            (
                2.0 * family::w0(family, params, x),
                family::k1(family, params, x),
                2.0 * e - 2.0 * family::k1(family, params, x) * f,
            )
        })
        .collect();

    // two-point solve, retried on near-degenerate pairs
    let mut solution: Option<(f64, f64)> = None;
    for (i, j) in [(2, 12), (4, 9), (6, 14)] {
        let (a1, b1, g1) = rows[i];
        let (a2, b2, g2) = rows[j];
        let det = a1 * b2 - a2 * b1;
        let scale = max_abs(&[a1 * b2, a2 * b1, a1, a2, b1, b2, 1.0]);
        if det.abs() > 1e-10 * scale {
            solution = Some(((g1 * b2 - g2 * b1) / det, (a1 * g2 - a2 * g1) / det));
            break;
        }
    }
    // rank-deficient system: least squares along the largest row direction
    let (delta, sum) = solution.unwrap_or_else(|| {
        let (a, b, _) = rows
            .iter()
            .copied()
            .max_by(|l, r| {
                (l.0.hypot(l.1))
                    .partial_cmp(&r.0.hypot(r.1))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        let norm = a.hypot(b);
        if norm == 0.0 {
            return (0.0, 0.0);
        }
        let (ua, ub) = (a / norm, b / norm);
        let (mut num, mut den) = (0.0, 0.0);
        for &(ai, bi, gi) in &rows {
            let proj = ai * ua + bi * ub;
            num += proj * gi;
            den += proj * proj;
        }
        let alpha = if den > 0.0 { num / den } else { 0.0 };
        (alpha * ua, alpha * ub)
    });

    for &(a, b, g) in &rows {
        let resid = a * delta + b * sum - g;
        let scale = max_abs(&[a * delta, b * sum, g]);
        if resid.abs() > 1e-9 * scale.max(1.0) {
            return Err(Error::NoNontrivialSolution);
        }
    }
    Ok(ConstantRatios {
        c2_over_c1: 0.5 * (sum - delta),
        c4_over_c3: 0.5 * (sum + delta),
    })
}

// ---------------------------------------------------------------------------
// Residual evaluators
// ---------------------------------------------------------------------------

/// Residual of the Bernoulli equation for one closed-form deformation term:
/// `W1' + W1^2 - k1 W1` with the analytic derivative.
pub fn bernoulli_residual(
    family: FamilyId,
    params: &FamilyParams,
    branch: Branch,
    x: f64,
) -> Result<ResidualSample> {
    let t = family::deformation_terms(family, params, x)?;
    let tp = family::deformation_term_derivatives(family, params, x)?;
    let (w, wp) = match branch {
        Branch::Plus => (t.w1_plus, tp.w1_plus),
        Branch::Minus => (t.w1_minus, tp.w1_minus),
    };
    let k1 = family::k1(family, params, x);
    let value = wp + w * w - k1 * w;
    Ok(ResidualSample {
        x,
        value,
        scale: max_abs(&[wp, w * w, k1 * w]),
    })
}

/// Which compatibility identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatibilityMode {
    /// Differential form with the analytic `W1±'` terms.
    Full,
    /// Algebraic form obtained after the Bernoulli substitution.
    Algebraic,
}

/// Compatibility-condition residual at one point, from the catalog's
/// closed forms and derived constants.
pub fn compatibility_residual(
    mode: CompatibilityMode,
    family: FamilyId,
    params: &FamilyParams,
    x: f64,
) -> Result<ResidualSample> {
    let t = family::deformation_terms(family, params, x)?;
    let (wp, wm) = (t.w1_plus, t.w1_minus);
    let w0 = family::w0(family, params, x);
    let (value, scale) = match mode {
        CompatibilityMode::Full => {
            let d = family::deformation_term_derivatives(family, params, x)?;
            let terms = [
                wp * wp,
                d.w1_plus,
                wm * wm,
                d.w1_minus,
                -2.0 * w0 * wm,
                2.0 * w0 * wp,
                -2.0 * wm * wp,
            ];
            (terms.iter().sum::<f64>(), max_abs(&terms))
        }
        CompatibilityMode::Algebraic => {
            let k1 = family::k1(family, params, x);
            let terms = [2.0 * w0 * (wp - wm), k1 * (wp + wm), -2.0 * wm * wp];
            (terms.iter().sum::<f64>(), max_abs(&terms))
        }
    };
    Ok(ResidualSample { x, value, scale })
}

/// Algebraic compatibility residual for *arbitrary* constant ratios, with
/// the deformation terms rebuilt as `E/(r + F)`. This is the sensitivity
/// probe: perturbing a derived ratio must push the residual up.
pub fn algebraic_residual_with_ratios(
    family: FamilyId,
    params: &FamilyParams,
    ratios: &ConstantRatios,
    x: f64,
) -> Result<ResidualSample> {
    params.validate(family)?;
    if family == FamilyId::ComplexExponential {
        return Err(Error::ComplexFamily);
    }
    let (e, f) = bernoulli_quadratures(family, params, x);
    let term = |r: f64| -> Result<f64> {
        let den = r + f;
        if den.abs() < POLE_GUARD * (1.0 + e.abs()) {
            return Err(Error::PoleAt { x });
        }
        Ok(e / den)
    };
    let wp = term(ratios.ratio(Branch::Plus))?;
    let wm = term(ratios.ratio(Branch::Minus))?;
    let w0 = family::w0(family, params, x);
    let k1 = family::k1(family, params, x);
    let terms = [2.0 * w0 * (wp - wm), k1 * (wp + wm), -2.0 * wm * wp];
    Ok(ResidualSample {
        x,
        value: terms.iter().sum(),
        scale: max_abs(&terms),
    })
}

/// Residuals of the strong shape-invariance condition and of its derivative
/// consequence: `W1-(x, m) - W1+(x, m-1)` and the same for the analytic
/// x-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongSiResidual {
    pub sic3: ResidualSample,
    pub sic2: ResidualSample,
}

pub fn strong_si_residual(
    family: FamilyId,
    params: &FamilyParams,
    x: f64,
) -> Result<StrongSiResidual> {
    params.validate(family)?;
    if !family.deformable() {
        return Err(Error::TrivialOnlyFamily);
    }
    if family == FamilyId::ComplexExponential {
        return Err(Error::ComplexFamily);
    }
    if !family::domain(family, params).contains(x) {
        return Err(Error::OutOfDomain { x });
    }
    let m = params.m;
    let wm = family::w1(family, params, m, Branch::Minus, x)?;
    let wp_shift = family::w1(family, params, m - 1.0, Branch::Plus, x)?;
    let dm = family::w1_prime(family, params, m, Branch::Minus, x)?;
    let dp_shift = family::w1_prime(family, params, m - 1.0, Branch::Plus, x)?;
    Ok(StrongSiResidual {
        sic3: ResidualSample {
            x,
            value: wm - wp_shift,
            scale: max_abs(&[wm, wp_shift]),
        },
        sic2: ResidualSample {
            x,
            value: dm - dp_shift,
            scale: max_abs(&[dm, dp_shift]),
        },
    })
}

// ---------------------------------------------------------------------------
// Complex evaluation mode
// ---------------------------------------------------------------------------

/// Relative residuals of every condition equation for the
/// complex-exponential family, computed in complex arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexConditionResiduals {
    pub bernoulli: f64,
    pub cc1: f64,
    pub cc2: f64,
    pub sic3: f64,
}

pub fn complex_condition_residuals(
    params: &FamilyParams,
    x: f64,
) -> Result<ComplexConditionResiduals> {
    let parts = family::superpotential_parts_complex(params, x)?;
    let (wp, wm) = family::deformation_terms_complex(params)?;
    let w0 = parts.w0;
    let k1 = parts.k1;
    let zero = Complex::ZERO; // W1±' = 0 for the constant terms

    let rel = |value: Complex, terms: &[Complex]| {
        let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
        value.abs() / scale.max(1.0)
    };

    let bern_terms = [zero, wp * wp, -(k1 * wp)];
    let bern = bern_terms[0] + bern_terms[1] + bern_terms[2];

    let cc1_terms = [
        wp * wp,
        zero,
        wm * wm,
        zero,
        -(w0 * wm).scale(2.0),
        (w0 * wp).scale(2.0),
        -(wm * wp).scale(2.0),
    ];
    let cc1 = cc1_terms.iter().fold(zero, |a, &t| a + t);

    let cc2_terms = [
        (w0 * (wp - wm)).scale(2.0),
        k1 * (wp + wm),
        -(wm * wp).scale(2.0),
    ];
    let cc2 = cc2_terms.iter().fold(zero, |a, &t| a + t);

    // W1± are m-independent constants, so the strong condition is exact.
    let sic3 = wm - wp;

    Ok(ComplexConditionResiduals {
        bernoulli: rel(bern, &bern_terms),
        cc1: rel(cc1, &cc1_terms),
        cc2: rel(cc2, &cc2_terms),
        sic3: rel(sic3, &[wm, wp]),
    })
}
