//! Verified numerical engines shared by the physics modules and their oracles.
//!
//! Everything here is deterministic: quadrature subdivides in a fixed order,
//! the Monte-Carlo engine draws from counter-based ChaCha streams keyed by
//! `(seed, partition)`, and fits start from periodogram peaks.

pub mod diff;
pub mod fit;
pub(crate) mod linalg;
pub mod montecarlo;
pub mod quadrature;
pub mod series;

pub use diff::{central_difference, gradient};
pub use fit::{sinusoid_fit, Sinusoid, SinusoidFit};
pub use montecarlo::{
    mc_integrate, mc_integrate_partition, partition_sizes, DomainSampler, HalfSpaceSampler,
    McConfig, McPartial, McResult, UniformBoxSampler,
};
pub use quadrature::{
    quad_finite, quad_finite_with, quad_semi_infinite, quad_semi_infinite_scaled, QuadOptions,
    QuadratureResult,
};
pub use series::{series_sum, zeta_tail, SeriesSum};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl core::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
