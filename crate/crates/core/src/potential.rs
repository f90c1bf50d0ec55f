//! Partner potentials from superpotentials, the shape-invariance constant,
//! and the Darboux zero mode.

use crate::error::{Error, Result};
use crate::family::{self, Branch, FamilyId, FamilyParams};
use crate::grid::Grid;

/// A superpotential with an analytic derivative; `None` marks a point where
/// the function is not evaluable (pole or outside the domain).
pub trait Superpotential {
    fn value(&self, x: f64) -> Option<f64>;
    fn derivative(&self, x: f64) -> Option<f64>;
}

/// Superpotential from a pair of closures.
pub struct FnSuperpotential<V, D> {
    value: V,
    derivative: D,
}

impl<V, D> FnSuperpotential<V, D>
where
    V: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    pub fn new(value: V, derivative: D) -> Self {
        FnSuperpotential { value, derivative }
    }
}

impl<V, D> Superpotential for FnSuperpotential<V, D>
where
    V: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    fn value(&self, x: f64) -> Option<f64> {
        let v = (self.value)(x);
        v.is_finite().then_some(v)
    }
    fn derivative(&self, x: f64) -> Option<f64> {
        let v = (self.derivative)(x);
        v.is_finite().then_some(v)
    }
}

/// The undeformed family superpotential `W0 = k0 + m k1`.
pub struct BaseSuperpotential {
    family: FamilyId,
    params: FamilyParams,
}

impl BaseSuperpotential {
    pub fn new(family: FamilyId, params: FamilyParams) -> Result<Self> {
        params.validate(family)?;
        if family == FamilyId::ComplexExponential {
            return Err(Error::ComplexFamily);
        }
        Ok(BaseSuperpotential { family, params })
    }
}

impl Superpotential for BaseSuperpotential {
    fn value(&self, x: f64) -> Option<f64> {
        family::domain(self.family, &self.params)
            .contains(x)
            .then(|| family::w0(self.family, &self.params, x))
    }
    fn derivative(&self, x: f64) -> Option<f64> {
        family::domain(self.family, &self.params)
            .contains(x)
            .then(|| family::w0_prime(self.family, &self.params, x))
    }
}

/// The full deformed superpotential `W = W0 + W1+ - W1-`.
pub struct DeformedSuperpotential {
    family: FamilyId,
    params: FamilyParams,
}

impl DeformedSuperpotential {
    pub fn new(family: FamilyId, params: FamilyParams) -> Result<Self> {
        params.validate(family)?;
        if !family.deformable() {
            return Err(Error::TrivialOnlyFamily);
        }
        if family == FamilyId::ComplexExponential {
            return Err(Error::ComplexFamily);
        }
        Ok(DeformedSuperpotential { family, params })
    }
}

impl Superpotential for DeformedSuperpotential {
    fn value(&self, x: f64) -> Option<f64> {
        if !family::domain(self.family, &self.params).contains(x) {
            return None;
        }
        let m = self.params.m;
        let wp = family::w1(self.family, &self.params, m, Branch::Plus, x).ok()?;
        let wm = family::w1(self.family, &self.params, m, Branch::Minus, x).ok()?;
        Some(family::w0(self.family, &self.params, x) + wp - wm)
    }
    fn derivative(&self, x: f64) -> Option<f64> {
        if !family::domain(self.family, &self.params).contains(x) {
            return None;
        }
        let m = self.params.m;
        let wp = family::w1_prime(self.family, &self.params, m, Branch::Plus, x).ok()?;
        let wm = family::w1_prime(self.family, &self.params, m, Branch::Minus, x).ok()?;
        Some(family::w0_prime(self.family, &self.params, x) + wp - wm)
    }
}

/// Sampled partner potentials `V = W^2 - W' + ε`, `Ṽ = W^2 + W' + ε`.
///
/// Pole-flagged samples are `None`. The two identity residuals record how
/// well the samples satisfy the defining pair of relations (they are
/// rounding-level when both potentials come from one superpotential, and
/// carry real information when the pair was assembled another way).
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialPair {
    pub grid: Grid,
    pub v: Vec<Option<f64>>,
    pub v_tilde: Vec<Option<f64>>,
    pub epsilon: f64,
    /// Translational parameter, when the pair came from a catalog family.
    pub m: Option<f64>,
    /// Max relative residual of `(Ṽ-ε) + (V-ε) - 2W^2`.
    pub quad_identity_residual: f64,
    /// Max relative residual of `Ṽ - V - 2W'`.
    pub deriv_identity_residual: f64,
}

impl PotentialPair {
    /// Count of pole-flagged samples.
    pub fn flagged(&self) -> usize {
        self.v
            .iter()
            .zip(&self.v_tilde)
            .filter(|(a, b)| a.is_none() || b.is_none())
            .count()
    }
}

/// Build the partner pair from a superpotential on a grid, validating both
/// partner identities along the way.
pub fn partner_pair_from_w(w: &impl Superpotential, epsilon: f64, grid: &Grid) -> PotentialPair {
    let n = grid.len();
    let mut v = Vec::with_capacity(n);
    let mut v_tilde = Vec::with_capacity(n);
    let mut quad = 0.0f64;
    let mut deriv = 0.0f64;
    for x in grid.points() {
        match (w.value(x), w.derivative(x)) {
            (Some(wv), Some(wp)) => {
                let sq = wv * wv;
                let (pv, pvt) = (sq - wp + epsilon, sq + wp + epsilon);
                v.push(Some(pv));
                v_tilde.push(Some(pvt));
                let scale = sq.abs().max(wp.abs()).max(1.0);
                quad = quad.max(((pvt - epsilon) + (pv - epsilon) - 2.0 * sq).abs() / scale);
                deriv = deriv.max((pvt - pv - 2.0 * wp).abs() / scale);
            }
            _ => {
                v.push(None);
                v_tilde.push(None);
            }
        }
    }
    PotentialPair {
        grid: grid.clone(),
        v,
        v_tilde,
        epsilon,
        m: None,
        quad_identity_residual: quad,
        deriv_identity_residual: deriv,
    }
}

/// Deformed pair with the route cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedPair {
    pub pair: PotentialPair,
    /// Max relative discrepancy between `V0 - 2W1+'`, `Ṽ0 - 2W1-'` and the
    /// same pair built from the full superpotential; this is the numerical
    /// content of the compatibility condition.
    pub crosscheck: f64,
}

/// Build the deformed partner pair both ways (ε = 0):
/// route one subtracts `2W1±'` from the base pair, route two applies the
/// Riccati combinations to the full `W`; the two must agree wherever the
/// compatibility condition holds.
pub fn deformed_pair(family: FamilyId, params: &FamilyParams, grid: &Grid) -> Result<DeformedPair> {
    let w_full = DeformedSuperpotential::new(family, *params)?;
    let via_w = partner_pair_from_w(&w_full, 0.0, grid);

    let n = grid.len();
    let mut v = Vec::with_capacity(n);
    let mut v_tilde = Vec::with_capacity(n);
    let mut crosscheck = 0.0f64;
    for (i, x) in grid.points().enumerate() {
        if !family::domain(family, params).contains(x) {
            v.push(None);
            v_tilde.push(None);
            continue;
        }
        let w0 = family::w0(family, params, x);
        let w0p = family::w0_prime(family, params, x);
        let m = params.m;
        let primes = (
            family::w1_prime(family, params, m, Branch::Plus, x),
            family::w1_prime(family, params, m, Branch::Minus, x),
        );
        let (Ok(wp_p), Ok(wm_p)) = primes else {
            v.push(None);
            v_tilde.push(None);
            continue;
        };
        let base_sq = w0 * w0;
        let pv = base_sq - w0p - 2.0 * wp_p;
        let pvt = base_sq + w0p - 2.0 * wm_p;
        if let (Some(bv), Some(bvt)) = (via_w.v[i], via_w.v_tilde[i]) {
            let scale = pv.abs().max(pvt.abs()).max(1.0);
            crosscheck = crosscheck
                .max((pv - bv).abs() / scale)
                .max((pvt - bvt).abs() / scale);
        }
        v.push(Some(pv));
        v_tilde.push(Some(pvt));
    }

    // identity residuals of the assembled pair against the full W
    let mut quad = 0.0f64;
    let mut deriv = 0.0f64;
    for (i, x) in grid.points().enumerate() {
        let (Some(pv), Some(pvt)) = (v[i], v_tilde[i]) else {
            continue;
        };
        let (Some(wv), Some(wpv)) = (w_full.value(x), w_full.derivative(x)) else {
            continue;
        };
        let sq = wv * wv;
        let scale = sq.abs().max(wpv.abs()).max(1.0);
        quad = quad.max((pvt + pv - 2.0 * sq).abs() / scale);
        deriv = deriv.max((pvt - pv - 2.0 * wpv).abs() / scale);
    }

    Ok(DeformedPair {
        pair: PotentialPair {
            grid: grid.clone(),
            v,
            v_tilde,
            epsilon: 0.0,
            m: Some(params.m),
            quad_identity_residual: quad,
            deriv_identity_residual: deriv,
        },
        crosscheck,
    })
}

/// One rung of the shape-invariance ladder: `R` is the grid mean of
/// `Ṽ(x, m) - V(x, m-1)` and `constancy` its standard deviation; constancy
/// below tolerance certifies shape invariance at this `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderEntry {
    pub m: f64,
    pub r: f64,
    pub constancy: f64,
}

/// Measure the shape-invariance constant numerically.
pub fn extract_r(family: FamilyId, params: &FamilyParams, grid: &Grid) -> Result<LadderEntry> {
    let at_m = deformed_pair(family, params, grid)?;
    let stepped = params.stepped();
    let at_m1 = deformed_pair(family, &stepped, grid)?;
    let mut diffs = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        match (at_m.pair.v_tilde[i], at_m1.pair.v[i]) {
            (Some(vt), Some(v)) => diffs.push(vt - v),
            _ => return Err(Error::PoleOnGrid),
        }
    }
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    Ok(LadderEntry {
        m: params.m,
        r: mean,
        constancy: var.sqrt(),
    })
}

/// The state annihilated by `A = d/dx + W`, accumulated in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMode {
    /// `exp(-∫ W)` normalized to peak 1.
    pub psi0: Vec<f64>,
    pub normalizable: bool,
}

/// Fraction of the truncated range counted as the tail at each end.
const TAIL_FRACTION: f64 = 0.1;
/// A tail carrying more than this fraction of the discrete square norm
/// means the state has not converged inside the truncation.
const TAIL_TOLERANCE: f64 = 1e-8;

/// Build `ψ0 ∝ exp(-∫ W)` with both grid ends treated as truncations of an
/// infinite domain: each outermost tenth of the range must carry under
/// 1e-8 of the discrete square norm.
pub fn zero_mode(w: &impl Superpotential, grid: &Grid) -> Result<ZeroMode> {
    zero_mode_impl(w, grid, true, true)
}

/// Like [`zero_mode`], but an end that coincides with a finite edge of the
/// family domain is judged differently: a zero mode may legitimately
/// concentrate next to a finite boundary (`ψ ~ x` on a half line puts real
/// mass near zero yet is perfectly normalizable), so there the test is
/// that `ψ` does not grow toward the edge.
pub fn zero_mode_in_domain(
    w: &impl Superpotential,
    grid: &Grid,
    domain: &crate::family::DomainSpec,
) -> Result<ZeroMode> {
    let truncated = |edge: f64, bound: f64| !edge.is_finite() || (bound - edge).abs() > 1e-9;
    zero_mode_impl(
        w,
        grid,
        truncated(domain.lower, grid.lower()),
        truncated(domain.upper, grid.upper()),
    )
}

fn zero_mode_impl(
    w: &impl Superpotential,
    grid: &Grid,
    left_truncated: bool,
    right_truncated: bool,
) -> Result<ZeroMode> {
    let n = grid.len();
    let h = grid.spacing();
    let mut wv = Vec::with_capacity(n);
    for x in grid.points() {
        wv.push(w.value(x).ok_or(Error::PoleOnGrid)?);
    }
    // prefix trapezoid of W, then log ψ0 = -(I_i - I_ref)
    let mut log_psi = vec![0.0f64; n];
    let mut acc = 0.0f64;
    for i in 1..n {
        acc += 0.5 * h * (wv[i - 1] + wv[i]);
        log_psi[i] = acc;
    }
    let reference = log_psi[n / 2];
    for l in log_psi.iter_mut() {
        *l = -(*l - reference);
    }
    let peak = log_psi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let psi0: Vec<f64> = log_psi.iter().map(|l| (l - peak).exp()).collect();

    let tail = ((n as f64 * TAIL_FRACTION).ceil() as usize)
        .max(2)
        .min(n - 1);
    let total: f64 = psi0.iter().map(|p| p * p * h).sum();
    let left_mass: f64 = psi0[..tail].iter().map(|p| p * p * h).sum();
    let right_mass: f64 = psi0[n - tail..].iter().map(|p| p * p * h).sum();
    let left_ok = if left_truncated {
        left_mass < TAIL_TOLERANCE * total
    } else {
        psi0[0] <= psi0[tail]
    };
    let right_ok = if right_truncated {
        right_mass < TAIL_TOLERANCE * total
    } else {
        psi0[n - 1] <= psi0[n - 1 - tail]
    };
    let normalizable = total > 0.0 && left_ok && right_ok;

    Ok(ZeroMode { psi0, normalizable })
}
