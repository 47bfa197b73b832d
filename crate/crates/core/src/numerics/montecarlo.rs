//! Deterministic, partitioned Monte-Carlo integration.
//!
//! Stream semantics: partition `p` of a run with seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `p`. Partitions are
//! disjoint counter ranges of the same key, so a partition's samples do not
//! depend on how many workers evaluate the run or in which order. Partials
//! are merged in partition order, which makes the final estimate
//! bit-identical for a given `(seed, samples, partitions)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::Vec3;

/// Uniform draw in the open interval `(0, 1)`.
pub fn uniform_open<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// A sampler of points on an integration domain with known density.
pub trait DomainSampler {
    type Point;

    /// Draws a point and returns it with the probability density at that point.
    fn sample(&self, rng: &mut dyn RngCore) -> (Self::Point, f64);
}

/// Sample budget and stream layout of a Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub partitions: usize,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            partitions: 1,
        }
    }

    pub fn with_partitions(mut self, partitions: usize) -> Self {
        self.partitions = partitions.max(1);
        self
    }
}

/// Per-partition running moments (Welford).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct McPartial {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl McPartial {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise merge.
    pub fn merge(self, other: McPartial) -> McPartial {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / n as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64) * (other.count as f64) / n as f64;
        McPartial { count: n, mean, m2 }
    }
}

/// Estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McResult {
    /// Merges partials in the given (partition) order.
    pub fn from_partials(partials: &[McPartial], seed: u64) -> McResult {
        let total = partials
            .iter()
            .copied()
            .fold(McPartial::default(), McPartial::merge);
        let variance = if total.count > 1 {
            total.m2 / (total.count - 1) as f64
        } else {
            0.0
        };
        McResult {
            value: total.mean,
            std_error: libm::sqrt(variance / total.count.max(1) as f64),
            samples: total.count,
            seed,
        }
    }
}

/// Number of samples assigned to each partition: the remainder goes to the
/// leading partitions, one each.
pub fn partition_sizes(samples: u64, partitions: usize) -> Vec<u64> {
    let p = partitions.max(1) as u64;
    (0..p)
        .map(|i| samples / p + u64::from(i < samples % p))
        .collect()
}

/// Evaluates a single partition of a run.
pub fn mc_integrate_partition<S, F>(
    f: &F,
    sampler: &S,
    cfg: McConfig,
    partition: usize,
) -> Result<McPartial>
where
    S: DomainSampler,
    F: Fn(&S::Point) -> f64,
{
    let n = partition_sizes(cfg.samples, cfg.partitions)[partition];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(partition as u64);
    let mut acc = McPartial::default();
    for index in 0..n {
        let (point, density) = sampler.sample(&mut rng);
        if !(density > 0.0) || !density.is_finite() {
            return Err(Error::ZeroDensity {
                partition,
                index: index as usize,
            });
        }
        acc.push(f(&point) / density);
    }
    Ok(acc)
}

/// Importance-sampled estimate of `∫ f` over the sampler's domain.
///
/// Partitions are evaluated sequentially here; a parallel driver that
/// evaluates [`mc_integrate_partition`] concurrently and merges with
/// [`McResult::from_partials`] returns the identical result.
pub fn mc_integrate<S, F>(f: F, sampler: &S, cfg: McConfig) -> Result<McResult>
where
    S: DomainSampler,
    F: Fn(&S::Point) -> f64,
{
    let partials = (0..cfg.partitions.max(1))
        .map(|p| mc_integrate_partition(&f, sampler, cfg, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(McResult::from_partials(&partials, cfg.seed))
}

/// Uniform sampling of an axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformBoxSampler {
    pub lo: Vec3,
    pub hi: Vec3,
}

impl DomainSampler for UniformBoxSampler {
    type Point = Vec3;

    fn sample(&self, rng: &mut dyn RngCore) -> (Vec3, f64) {
        let d = self.hi - self.lo;
        let p = Vec3::new(
            self.lo.x + d.x * uniform_open(rng),
            self.lo.y + d.y * uniform_open(rng),
            self.lo.z + d.z * uniform_open(rng),
        );
        (p, 1.0 / (d.x * d.y * d.z))
    }
}

/// Importance sampler for the half-space `z ≥ z0` as seen from the origin.
///
/// Height is drawn from `p(z) ∝ z^{-tail_power}` on `[z0, ∞)`; the in-plane
/// radius at height `z` from `4z⁴ρ/(ρ² + z²)³`, the marginal of `r⁻⁶`; the
/// azimuth uniformly. With `tail_power = 4` the joint density is
/// `6 z0³ / (π r⁶)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpaceSampler {
    pub z0: f64,
    pub tail_power: f64,
}

impl HalfSpaceSampler {
    pub fn new(z0: f64) -> Self {
        Self {
            z0,
            tail_power: 4.0,
        }
    }

    pub fn with_tail_power(mut self, tail_power: f64) -> Self {
        self.tail_power = tail_power;
        self
    }
}

impl DomainSampler for HalfSpaceSampler {
    type Point = Vec3;

    fn sample(&self, rng: &mut dyn RngCore) -> (Vec3, f64) {
        let k = self.tail_power - 1.0;
        let z = self.z0 * libm::pow(uniform_open(rng), -1.0 / k);
        let pz = k * libm::pow(self.z0, k) / libm::pow(z, self.tail_power);
        let u = uniform_open(rng);
        let rho2 = z * z * (1.0 / libm::sqrt(u) - 1.0);
        let rho = libm::sqrt(rho2);
        let phi = 2.0 * PI * uniform_open(rng);
        let r2 = rho2 + z * z;
        let z4 = z * z * z * z;
        let density = pz * 2.0 * z4 / (PI * r2 * r2 * r2);
        (
            Vec3::new(rho * libm::cos(phi), rho * libm::sin(phi), z),
            density,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_integrand_is_exact_with_zero_variance() {
        let s = UniformBoxSampler {
            lo: Vec3::new(0.0, 0.0, 0.0),
            hi: Vec3::new(2.0, 1.0, 1.0),
        };
        let r = mc_integrate(|_| 3.0, &s, McConfig::new(10_000, 7)).unwrap();
        assert!((r.value - 6.0).abs() < 1e-12);
        assert_eq!(r.std_error, 0.0);
    }

    #[test]
    fn partitioned_runs_are_reproducible() {
        let s = HalfSpaceSampler::new(1.0).with_tail_power(3.0);
        let f = |p: &Vec3| 1.0 / libm::pow(p.norm_squared(), 3.0);
        let cfg = McConfig::new(20_001, 42).with_partitions(4);
        let a = mc_integrate(f, &s, cfg).unwrap();
        let b = mc_integrate(f, &s, cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        assert_eq!(a.samples, 20_001);
        // Out-of-order partition evaluation merges to the same bits.
        let mut partials: Vec<_> = (0..4)
            .rev()
            .map(|p| (p, mc_integrate_partition(&f, &s, cfg, p).unwrap()))
            .collect();
        partials.sort_by_key(|(p, _)| *p);
        let merged: Vec<_> = partials.into_iter().map(|(_, x)| x).collect();
        let c = McResult::from_partials(&merged, 42);
        assert_eq!(a.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn different_seeds_differ() {
        let s = HalfSpaceSampler::new(1.0).with_tail_power(3.0);
        let f = |p: &Vec3| 1.0 / libm::pow(p.norm_squared(), 3.0);
        let a = mc_integrate(f, &s, McConfig::new(1000, 1)).unwrap();
        let b = mc_integrate(f, &s, McConfig::new(1000, 2)).unwrap();
        assert_ne!(a.value, b.value);
    }

    #[test]
    fn partition_sizes_cover_budget() {
        assert_eq!(partition_sizes(10, 3), alloc::vec![4, 3, 3]);
        assert_eq!(partition_sizes(10, 3).iter().sum::<u64>(), 10);
    }

    #[test]
    fn zero_density_is_rejected() {
        let s = UniformBoxSampler {
            lo: Vec3::ZERO,
            hi: Vec3::new(f64::INFINITY, 1.0, 1.0),
        };
        let err = mc_integrate(|_| 1.0, &s, McConfig::new(5, 0)).unwrap_err();
        assert_eq!(
            err,
            Error::ZeroDensity {
                partition: 0,
                index: 0
            }
        );
    }

    #[test]
    fn inverse_sixth_power_over_half_space() {
        // ∫_{z>z0} r⁻⁶ dV = π/(6 z0³); z ∝ z⁻³ leaves genuine variance.
        let z0 = 1.0;
        let s = HalfSpaceSampler::new(z0).with_tail_power(3.0);
        let r = mc_integrate(
            |p: &Vec3| 1.0 / libm::pow(p.norm_squared(), 3.0),
            &s,
            McConfig::new(200_000, 11).with_partitions(3),
        )
        .unwrap();
        let exact = PI / 6.0;
        assert!(r.std_error > 0.0);
        assert!(
            (r.value - exact).abs() < 3.0 * r.std_error,
            "{} ± {}",
            r.value,
            r.std_error
        );
    }
}
