//! Imaginary-time mode sums for the free energy induced by the coupling.
//!
//! Each Matsubara mode `K = 2πn/β` contributes
//! `F_K = (2α²/β) u²/(u² + 1)²` with `u = K` (`ħ = 1`); the sum over all
//! integers `n` gives the induced free energy `F`.

use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::series::zeta_tail;
use crate::numerics::CompensatedSum;

/// `K_n = 2πn/β`.
pub fn matsubara_frequency(beta: f64, n: i64) -> f64 {
    2.0 * PI * n as f64 / beta
}

/// `⟨|x̃(K)|²⟩ = 1/(u² + 1)` for the uncoupled reference oscillators.
pub fn reference_mode_average(u: f64) -> f64 {
    1.0 / (u * u + 1.0)
}

/// `F_K = (2α²/β) u²/(u² + 1)²`.
pub fn mode_free_energy(alpha: f64, u: f64, beta: f64) -> Result<f64> {
    let beta = require_beta(beta)?;
    let s = reference_mode_average(u);
    Ok(2.0 * alpha * alpha / beta * u * u * s * s)
}

fn require_beta(beta: f64) -> Result<f64> {
    if beta.is_finite() && beta > 0.0 {
        Ok(beta)
    } else {
        Err(Error::domain("beta", beta, "must be finite and > 0"))
    }
}

/// Truncated Matsubara sum with a certified tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraGrid {
    pub beta: f64,
    pub n_max: usize,
    pub tail_tol: f64,
}

/// Largest `n_max` an automatic grid will choose.
pub const AUTO_N_MAX_LIMIT: usize = 100_000_000;

impl MatsubaraGrid {
    pub fn new(beta: f64, n_max: usize, tail_tol: f64) -> Result<Self> {
        let beta = require_beta(beta)?;
        if !(tail_tol.is_finite() && tail_tol > 0.0) {
            return Err(Error::domain(
                "tail_tol",
                tail_tol,
                "must be finite and > 0",
            ));
        }
        Ok(Self {
            beta,
            n_max,
            tail_tol,
        })
    }

    /// Smallest `n_max` whose tail error bound (for unit coupling) meets
    /// `tail_tol`.
    pub fn auto(beta: f64, tail_tol: f64) -> Result<Self> {
        let mut grid = Self::new(beta, 0, tail_tol)?;
        let (mut lo, mut hi) = (0usize, 1usize);
        while grid.with_n_max(hi).error_bound(1.0) > tail_tol {
            lo = hi;
            hi *= 2;
            if hi > AUTO_N_MAX_LIMIT {
                return Err(Error::Truncation {
                    bound: grid.with_n_max(AUTO_N_MAX_LIMIT).error_bound(1.0),
                    tail_tol,
                });
            }
        }
        if grid.with_n_max(lo).error_bound(1.0) <= tail_tol {
            hi = lo;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if grid.with_n_max(mid).error_bound(1.0) <= tail_tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        grid.n_max = hi;
        Ok(grid)
    }

    /// Like [`Self::auto`], but sized so that the certified tail meets
    /// `tail_tol` for coupling `alpha` (the bound scales with `α²`).
    pub fn auto_for(alpha: f64, beta: f64, tail_tol: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::domain("alpha", alpha, "must be finite"));
        }
        let a2 = alpha * alpha;
        let mut grid = Self::auto(beta, if a2 > 1.0 { tail_tol / a2 } else { tail_tol })?;
        grid.tail_tol = tail_tol;
        Ok(grid)
    }

    fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    /// Analytic estimate of `Σ_{|n|>n_max} F_K` from `F_K ≈ (2α²/β)/u²`.
    pub fn tail_estimate(&self, alpha: f64) -> f64 {
        alpha * alpha * self.beta / (PI * PI) * zeta_tail(2.0, self.n_max)
    }

    /// Bound on the error of [`Self::tail_estimate`]; uses
    /// `|u²/(u²+1)² − 1/u²| ≤ 2/u⁴`.
    pub fn error_bound(&self, alpha: f64) -> f64 {
        let s = self.beta / (2.0 * PI);
        8.0 * alpha * alpha / self.beta * s * s * s * s * zeta_tail(4.0, self.n_max)
    }
}

/// Free energy with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEnergy {
    pub value: f64,
    pub tail_estimate: f64,
    pub error_bound: f64,
    pub n_max: usize,
}

/// `F = Σ_n F_K` over `|n| ≤ n_max` plus the analytic tail.
///
/// Fails with [`Error::Truncation`] when the certified tail error exceeds
/// `tail_tol`.
pub fn induced_free_energy_detailed(alpha: f64, grid: &MatsubaraGrid) -> Result<FreeEnergy> {
    if !alpha.is_finite() {
        return Err(Error::domain("alpha", alpha, "must be finite"));
    }
    let bound = grid.error_bound(alpha);
    if bound > grid.tail_tol {
        return Err(Error::Truncation {
            bound,
            tail_tol: grid.tail_tol,
        });
    }
    // n and −n contribute equally; F_0 = 0. Summed from the small tail
    // terms upward for accuracy and a fixed order.
    let mut acc = CompensatedSum::new();
    for n in (1..=grid.n_max).rev() {
        let u = matsubara_frequency(grid.beta, n as i64);
        acc.add(2.0 * mode_free_energy(alpha, u, grid.beta)?);
    }
    let tail = grid.tail_estimate(alpha);
    acc.add(tail);
    Ok(FreeEnergy {
        value: acc.value(),
        tail_estimate: tail,
        error_bound: bound,
        n_max: grid.n_max,
    })
}

pub fn induced_free_energy(alpha: f64, grid: &MatsubaraGrid) -> Result<f64> {
    induced_free_energy_detailed(alpha, grid).map(|f| f.value)
}
