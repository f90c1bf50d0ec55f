//! Discretized Hamiltonians and the Sturm-bisection eigensolver.
//!
//! `H = -d²/dx² + V` becomes a symmetric tridiagonal operator under
//! second-order central differences with Dirichlet conditions at the
//! truncation points. Eigenvalues come from Sturm-sequence counting plus
//! bisection: deterministic, dependency-free, and insensitive to huge
//! potential values in the classically forbidden region (only pivot signs
//! matter).

use crate::error::{Error, Result};
use crate::family::{self, FamilyId, FamilyParams, SingularityVerdict};
use crate::grid::Grid;
use crate::potential::{self, DeformedSuperpotential, LadderEntry};

/// Minimum interior point count for spectral work.
pub const MIN_SPECTRAL_POINTS: usize = 64;

/// Default absolute bisection tolerance for eigenvalues.
pub const EIGEN_TOL: f64 = 1e-10;

/// Symmetric tridiagonal operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidGrid(
                "tridiagonal operator needs n diagonal and n-1 off-diagonal entries".into(),
            ));
        }
        Ok(TridiagonalOperator { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// `y = T x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.offdiag[i] * x[i + 1];
            }
            y[i] = v;
        }
        y
    }
}

/// Discretize `-d²/dx² + V` on the grid with Dirichlet truncation.
pub fn discretize(v: &[Option<f64>], grid: &Grid) -> Result<TridiagonalOperator> {
    if v.len() != grid.len() {
        return Err(Error::InvalidGrid(format!(
            "potential has {} samples for a grid of {}",
            v.len(),
            grid.len()
        )));
    }
    if grid.len() < MIN_SPECTRAL_POINTS {
        return Err(Error::InvalidGrid(format!(
            "spectral grids need at least {MIN_SPECTRAL_POINTS} points, got {}",
            grid.len()
        )));
    }
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(v.len());
    for sample in v {
        match sample {
            Some(value) if value.is_finite() => diag.push(2.0 * inv_h2 + value),
            _ => return Err(Error::PoleOnGrid),
        }
    }
    let offdiag = vec![-inv_h2; v.len() - 1];
    Ok(TridiagonalOperator { diag, offdiag })
}

/// Sturm pivot guard: preserves the pivot sign, small enough to never mask
/// a genuine sign change, large enough that `e²/q` stays finite.
const PIVOT_GUARD: f64 = 1e-154;

/// Count eigenvalues strictly below `lambda` via the LDLᵀ pivot signs.
pub fn sturm_count_below(op: &TridiagonalOperator, lambda: f64) -> usize {
    let mut count = 0usize;
    let mut q = op.diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..op.dim() {
        if q.abs() < PIVOT_GUARD {
            q = if q >= 0.0 { PIVOT_GUARD } else { -PIVOT_GUARD };
        }
        let e = op.offdiag[i - 1];
        q = (op.diag[i] - lambda) - e * e / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` algebraically smallest eigenvalues, each located by bisection to
/// absolute accuracy `tol`. Deterministic; `1 <= k <= dim`.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, k: usize, tol: f64) -> Vec<f64> {
    assert!(k >= 1 && k <= op.dim(), "k = {k} out of range");
    assert!(tol > 0.0);
    let n = op.dim();
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let left = if i > 0 { op.offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { op.offdiag[i].abs() } else { 0.0 };
        lo = lo.min(op.diag[i] - left - right);
        hi = hi.max(op.diag[i] + left + right);
    }
    lo -= 1.0;
    hi += 1.0;

    let mut eigenvalues = Vec::with_capacity(k);
    for index in 0..k {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if sturm_count_below(op, mid) <= index {
                a = mid;
            } else {
                b = mid;
            }
        }
        let ev = 0.5 * (a + b);
        eigenvalues.push(ev);
        // eigenvalue `index + 1` cannot lie below this one
        lo = a;
    }
    eigenvalues
}

/// Low-lying spectra of a partner pair with pairing diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub energies: Vec<f64>,
    pub energies_tilde: Vec<f64>,
    /// `|energies_tilde[i] - energies[i+1]|` for unbroken pairing.
    pub pairing_defects: Vec<f64>,
    /// Filled by the ladder check: `|Ẽ_i(m) - E_i(m-1) - R(m-1)|`.
    pub ladder_defects: Vec<f64>,
    pub zero_mode_normalizable: bool,
}

#[derive(Clone, Copy)]
enum Partner {
    V,
    VTilde,
}

fn eigen_on_grid(
    family: FamilyId,
    params: &FamilyParams,
    grid: &Grid,
    k: usize,
    which: Partner,
) -> Result<Vec<f64>> {
    let pair = potential::deformed_pair(family, params, grid)?.pair;
    let samples = match which {
        Partner::V => &pair.v,
        Partner::VTilde => &pair.v_tilde,
    };
    let op = discretize(samples, grid)?;
    Ok(lowest_eigenvalues(&op, k, EIGEN_TOL))
}

/// Eigenvalues at `h` and `h/2` combined by Richardson extrapolation of the
/// second-order scheme: `(4 E_fine - E_coarse) / 3`.
fn eigen_refined(
    family: FamilyId,
    params: &FamilyParams,
    grid: &Grid,
    k: usize,
    which: Partner,
) -> Result<Vec<f64>> {
    let coarse = eigen_on_grid(family, params, grid, k, which)?;
    let fine = eigen_on_grid(family, params, &grid.refined(), k, which)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect())
}

fn require_free(family: FamilyId, params: &FamilyParams) -> Result<()> {
    match family::singularity_verdict(family, params)? {
        SingularityVerdict::Free => Ok(()),
        SingularityVerdict::Singular { witness } => Err(Error::SingularFamilyParams { witness }),
    }
}

/// Spectra of the discretized deformed partner Hamiltonians (Richardson
/// extrapolated) with the SUSY pairing defects.
pub fn partner_spectrum_check(
    family: FamilyId,
    params: &FamilyParams,
    grid: &Grid,
    k: usize,
) -> Result<SpectralReport> {
    params.validate(family)?;
    if !family.hermitian() {
        return Err(Error::NonHermitianFamily);
    }
    require_free(family, params)?;

    let energies = eigen_refined(family, params, grid, k, Partner::V)?;
    let energies_tilde = eigen_refined(family, params, grid, k, Partner::VTilde)?;
    let pairing_defects = energies_tilde
        .iter()
        .take(k.saturating_sub(1))
        .enumerate()
        .map(|(i, et)| (et - energies[i + 1]).abs())
        .collect();

    let w = DeformedSuperpotential::new(family, *params)?;
    let dom = family::domain(family, params);
    let zero_mode_normalizable = potential::zero_mode_in_domain(&w, grid, &dom)?.normalizable;

    Ok(SpectralReport {
        energies,
        energies_tilde,
        pairing_defects,
        ladder_defects: Vec::new(),
        zero_mode_normalizable,
    })
}

/// One verified rung of the shape-invariance ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderRung {
    pub rung: usize,
    pub entry: LadderEntry,
    /// Spectrum of `H` at `m - rung - 1`.
    pub energies: Vec<f64>,
    /// Spectrum of `H̃` at `m - rung`.
    pub energies_tilde: Vec<f64>,
    /// `|Ẽ_i(m - rung) - E_i(m - rung - 1) - R|`
    pub shift_defects: Vec<f64>,
}

/// Verify spectrally that `spectrum(H̃ at m) = spectrum(H at m-1) + R(m-1)`
/// down `depth` rungs of the ladder.
pub fn ladder_check(
    family: FamilyId,
    params: &FamilyParams,
    depth: usize,
    grid: &Grid,
    k: usize,
) -> Result<Vec<LadderRung>> {
    params.validate(family)?;
    if !family.hermitian() {
        return Err(Error::NonHermitianFamily);
    }
    // every parameter value the ladder will touch must be singularity-free
    for step in 0..=depth {
        let p = params.with_m(params.m - step as f64);
        if let Err(Error::SingularFamilyParams { witness }) = require_free(family, &p) {
            if step == 0 {
                return Err(Error::SingularFamilyParams { witness });
            }
            return Err(Error::SingularAtRung {
                rung: step - 1,
                witness,
            });
        }
    }

    let mut rungs = Vec::with_capacity(depth);
    for j in 0..depth {
        let upper = params.with_m(params.m - j as f64);
        let lower = upper.stepped();
        let entry = potential::extract_r(family, &upper, grid)?;
        let energies_tilde = eigen_refined(family, &upper, grid, k, Partner::VTilde)?;
        let energies = eigen_refined(family, &lower, grid, k, Partner::V)?;
        let shift_defects = energies_tilde
            .iter()
            .zip(&energies)
            .map(|(et, e)| (et - e - entry.r).abs())
            .collect();
        rungs.push(LadderRung {
            rung: j,
            entry,
            energies,
            energies_tilde,
            shift_defects,
        });
    }
    Ok(rungs)
}
