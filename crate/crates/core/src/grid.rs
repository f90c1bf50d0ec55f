//! Uniform sampling grid on an open interval.

use crate::error::{Error, Result};

/// Uniform grid of `n` interior points on the open interval `(a, b)`.
///
/// The spacing is `h = (b - a) / (n + 1)`; the endpoints themselves are
/// never sampled, which keeps evaluation safe on open domains and doubles
/// as the Dirichlet truncation for the discretized Hamiltonians.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || b <= a {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite with a < b, got ({a}, {b})"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidGrid(
                "need at least one interior point".into(),
            ));
        }
        Ok(Grid { a, b, n })
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.n as f64 + 1.0)
    }

    /// i-th interior point, `a + (i + 1) h`.
    pub fn point(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        self.a + self.spacing() * (i as f64 + 1.0)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Grid on the same interval with halved spacing (`2n + 1` points).
    ///
    /// Every point of `self` is also a point of the refined grid, which is
    /// what Richardson extrapolation of the second-order scheme needs.
    pub fn refined(&self) -> Grid {
        Grid {
            a: self.a,
            b: self.b,
            n: 2 * self.n + 1,
        }
    }
}
