//! Least-squares fitting of a sum of sinusoids.
//!
//! Starting frequencies come from periodogram peaks, peeled one component
//! at a time. The joint fit then runs Levenberg–Marquardt over all
//! frequencies and quadrature amplitudes, which resolves a frequency far
//! below the periodogram bin width.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::solve_in_place;
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;
const CONDITION_LIMIT: f64 = 1e15;

/// One fitted component `amplitude · cos(frequency · t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sinusoid {
    pub frequency: f64,
    pub amplitude: f64,
    pub phase: f64,
}

/// Components sorted by descending frequency, with fit diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SinusoidFit {
    pub components: Vec<Sinusoid>,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// Pivot-ratio condition estimate of the final normal equations.
    pub condition: f64,
    pub iterations: usize,
}

/// Fits `k` sinusoids to the samples `(times[i], values[i])`.
///
/// Samples need not be uniform, but the periodogram search assumes the mean
/// spacing sets the Nyquist limit. The record should span many periods of
/// the slowest component.
pub fn sinusoid_fit(times: &[f64], values: &[f64], k: usize) -> Result<SinusoidFit> {
    if k == 0 {
        return Err(Error::domain("k", 0.0, "at least one component"));
    }
    if times.len() != values.len() || times.len() < 3 * k + 1 {
        return Err(Error::domain(
            "samples",
            times.len() as f64,
            "need matching times/values and more samples than parameters",
        ));
    }
    let mut freqs = initial_frequencies(times, values, k)?;
    let (mut amps, _) = linear_amplitudes(times, values, &freqs)?;
    let n_params = 3 * k;
    let mut lambda = 1e-3;
    let mut cost = residual_sum_squares(times, values, &freqs, &amps);
    let mut condition = 1.0;

    for it in 0..MAX_ITERATIONS {
        let iterations = it + 1;
        // Normal equations J^T J δ = J^T r, parameters (ω_j, a_j, b_j).
        let mut jtj = vec![0.0; n_params * n_params];
        let mut jtr = vec![0.0; n_params];
        let mut row = vec![0.0; n_params];
        for (&t, &y) in times.iter().zip(values) {
            let mut model = 0.0;
            for j in 0..k {
                let (s, c) = libm::sincos(freqs[j] * t);
                let (a, b) = (amps[2 * j], amps[2 * j + 1]);
                model += a * c + b * s;
                row[3 * j] = t * (-a * s + b * c);
                row[3 * j + 1] = c;
                row[3 * j + 2] = s;
            }
            let r = y - model;
            for p in 0..n_params {
                jtr[p] += row[p] * r;
                for q in p..n_params {
                    jtj[p * n_params + q] += row[p] * row[q];
                }
            }
        }
        for p in 0..n_params {
            for q in 0..p {
                jtj[p * n_params + q] = jtj[q * n_params + p];
            }
        }

        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for p in 0..n_params {
                a[p * n_params + p] *= 1.0 + lambda;
            }
            let mut delta = jtr.clone();
            let Some(cond) = solve_in_place(&mut a, &mut delta, n_params) else {
                return Err(Error::IllConditioned {
                    condition: f64::INFINITY,
                });
            };
            condition = cond;
            let trial_freqs: Vec<f64> = (0..k).map(|j| freqs[j] + delta[3 * j]).collect();
            let trial_amps: Vec<f64> = (0..k)
                .flat_map(|j| {
                    [
                        amps[2 * j] + delta[3 * j + 1],
                        amps[2 * j + 1] + delta[3 * j + 2],
                    ]
                })
                .collect();
            let trial_cost = residual_sum_squares(times, values, &trial_freqs, &trial_amps);
            if trial_cost <= cost {
                let rel_change = (cost - trial_cost) / cost.max(f64::MIN_POSITIVE);
                let step = delta
                    .iter()
                    .step_by(3)
                    .zip(&trial_freqs)
                    .map(|(d, w)| libm::fabs(*d) / libm::fabs(*w).max(1e-300))
                    .fold(0.0, f64::max);
                freqs = trial_freqs;
                amps = trial_amps;
                cost = trial_cost;
                lambda = (lambda * 0.1).max(1e-15);
                improved = true;
                if step < 1e-14 || rel_change < 1e-26 {
                    return finish(times, freqs, amps, cost, condition, iterations);
                }
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            // No downhill step at any damping: converged to working precision.
            return finish(times, freqs, amps, cost, condition, iterations);
        }
    }
    let residual = libm::sqrt(cost / times.len() as f64);
    Err(Error::FitNonConvergence { residual })
}

fn finish(
    times: &[f64],
    freqs: Vec<f64>,
    amps: Vec<f64>,
    cost: f64,
    condition: f64,
    iterations: usize,
) -> Result<SinusoidFit> {
    // The unscaled normal matrix mixes t-weighted frequency columns with
    // amplitude columns; normalise by the record length before judging.
    let span = times.last().unwrap() - times.first().unwrap();
    let scaled = condition / (1.0 + span * span);
    if !scaled.is_finite() || scaled > CONDITION_LIMIT {
        return Err(Error::IllConditioned { condition });
    }
    let mut components: Vec<Sinusoid> = freqs
        .iter()
        .enumerate()
        .map(|(j, &w)| {
            let (a, b) = (amps[2 * j], amps[2 * j + 1]);
            // a cos + b sin = A cos(ωt + φ), A = √(a²+b²), φ = atan2(−b, a)
            let (w, b) = if w < 0.0 { (-w, -b) } else { (w, b) };
            Sinusoid {
                frequency: w,
                amplitude: libm::hypot(a, b),
                phase: libm::atan2(-b, a),
            }
        })
        .collect();
    components.sort_by(|p, q| q.frequency.total_cmp(&p.frequency));
    Ok(SinusoidFit {
        components,
        residual: libm::sqrt(cost / times.len() as f64),
        condition,
        iterations,
    })
}

fn residual_sum_squares(times: &[f64], values: &[f64], freqs: &[f64], amps: &[f64]) -> f64 {
    times
        .iter()
        .zip(values)
        .map(|(&t, &y)| {
            let model: f64 = freqs
                .iter()
                .enumerate()
                .map(|(j, &w)| {
                    let (s, c) = libm::sincos(w * t);
                    amps[2 * j] * c + amps[2 * j + 1] * s
                })
                .sum();
            (y - model) * (y - model)
        })
        .sum()
}

/// Linear least squares for the quadrature amplitudes at fixed frequencies.
fn linear_amplitudes(times: &[f64], values: &[f64], freqs: &[f64]) -> Result<(Vec<f64>, f64)> {
    let n = 2 * freqs.len();
    let mut ata = vec![0.0; n * n];
    let mut aty = vec![0.0; n];
    let mut row = vec![0.0; n];
    for (&t, &y) in times.iter().zip(values) {
        for (j, &w) in freqs.iter().enumerate() {
            let (s, c) = libm::sincos(w * t);
            row[2 * j] = c;
            row[2 * j + 1] = s;
        }
        for p in 0..n {
            aty[p] += row[p] * y;
            for q in 0..n {
                ata[p * n + q] += row[p] * row[q];
            }
        }
    }
    let cond = solve_in_place(&mut ata, &mut aty, n).ok_or(Error::IllConditioned {
        condition: f64::INFINITY,
    })?;
    Ok((aty, cond))
}

fn periodogram_power(times: &[f64], values: &[f64], w: f64) -> f64 {
    let mut re = 0.0;
    let mut im = 0.0;
    for (&t, &y) in times.iter().zip(values) {
        let (s, c) = libm::sincos(w * t);
        re += y * c;
        im += y * s;
    }
    re * re + im * im
}

/// Peels `k` periodogram peaks off the signal, refining each peak by a
/// golden-section search inside its bin.
fn initial_frequencies(times: &[f64], values: &[f64], k: usize) -> Result<Vec<f64>> {
    let n = times.len();
    let span = times[n - 1] - times[0];
    if !(span > 0.0) {
        return Err(Error::domain(
            "times",
            span,
            "record must span a positive duration",
        ));
    }
    let spacing = span / (n - 1) as f64;
    let nyquist = core::f64::consts::PI / spacing;
    let bin = core::f64::consts::PI / span / 2.0;
    let bins = ((nyquist / bin) as usize).max(4);

    let mut residual: Vec<f64> = values.to_vec();
    let mut found: Vec<f64> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best = (0.0, 0.0);
        for i in 1..bins {
            let w = i as f64 * bin;
            let p = periodogram_power(times, &residual, w);
            if p > best.1 {
                best = (w, p);
            }
        }
        // Golden-section refinement on [w − bin, w + bin].
        let (mut lo, mut hi) = ((best.0 - bin).max(0.5 * bin), best.0 + bin);
        let g = 0.5 * (libm::sqrt(5.0) - 1.0);
        for _ in 0..40 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if periodogram_power(times, &residual, m1) > periodogram_power(times, &residual, m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let w = 0.5 * (lo + hi);
        found.push(w);
        let (amps, _) = linear_amplitudes(times, values, &found)?;
        for (r, (&t, &y)) in residual.iter_mut().zip(times.iter().zip(values)) {
            let model: f64 = found
                .iter()
                .enumerate()
                .map(|(j, &wj)| {
                    let (s, c) = libm::sincos(wj * t);
                    amps[2 * j] * c + amps[2 * j + 1] * s
                })
                .sum();
            *r = y - model;
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, dt: f64) -> Vec<f64> {
        (0..n).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn pure_cosine() {
        let t = grid(2000, 0.1);
        let y: Vec<f64> = t.iter().map(|&t| libm::cos(t)).collect();
        let fit = sinusoid_fit(&t, &y, 1).unwrap();
        assert!((fit.components[0].frequency - 1.0).abs() < 1e-8);
        assert!((fit.components[0].amplitude - 1.0).abs() < 1e-8);
        assert!(fit.components[0].phase.abs() < 1e-8);
    }

    #[test]
    fn two_modes_at_two_and_a_half() {
        let t = grid(4000, 0.05);
        let y: Vec<f64> = t
            .iter()
            .map(|&t| 0.7 * libm::cos(2.0 * t + 0.3) + 1.3 * libm::sin(0.5 * t))
            .collect();
        let fit = sinusoid_fit(&t, &y, 2).unwrap();
        assert!((fit.components[0].frequency - 2.0).abs() < 1e-6);
        assert!((fit.components[1].frequency - 0.5).abs() < 1e-6);
        assert!(fit.residual <= 1e-10, "residual {}", fit.residual);
        assert!((fit.components[0].amplitude - 0.7).abs() < 1e-8);
        assert!((fit.components[1].amplitude - 1.3).abs() < 1e-8);
    }

    #[test]
    fn rejects_too_few_samples() {
        assert!(sinusoid_fit(&[0.0, 1.0], &[1.0, 0.0], 1).is_err());
        assert!(sinusoid_fit(&[0.0, 1.0, 2.0], &[1.0, 0.0, 1.0], 0).is_err());
    }

    #[test]
    fn degenerate_components_are_ill_conditioned() {
        // Asking for two components of a single pure tone leaves one of
        // them without support in the data.
        let t = grid(500, 0.1);
        let y: Vec<f64> = t.iter().map(|&t| libm::cos(t)).collect();
        match sinusoid_fit(&t, &y, 2) {
            Err(Error::IllConditioned { .. }) | Err(Error::FitNonConvergence { .. }) => {}
            Ok(fit) => {
                // Acceptable only if the spurious component carries no weight.
                let weak = fit
                    .components
                    .iter()
                    .map(|c| c.amplitude)
                    .fold(f64::MAX, f64::min);
                assert!(weak < 1e-6, "{fit:?}");
            }
            Err(other) => panic!("unexpected {other:?}"),
        }
    }
}
