//! Series summation with certified remainders.

use super::CompensatedSum;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 50_000_000;

/// A partial sum together with the bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub remainder_bound: f64,
    pub terms: usize,
}

/// Sums `term(n)` for `n = start, start+1, …` until `tail_bound(n)` — a bound
/// on `Σ_{k>n} |term(k)|` — drops below `tol`.
///
/// The supplied bound is checked against every term it is meant to cover:
/// a term with `|term(n+1)| > tail_bound(n)` is a violated bound and fails.
pub fn series_sum<T, B>(term: T, tail_bound: B, start: usize, tol: f64) -> Result<SeriesSum>
where
    T: Fn(usize) -> f64,
    B: Fn(usize) -> f64,
{
    let mut acc = CompensatedSum::new();
    let mut n = start;
    let mut prev_bound = f64::INFINITY;
    loop {
        let t = term(n);
        if libm::fabs(t) > prev_bound * (1.0 + 1e-12) {
            return Err(Error::SeriesBoundViolation {
                index: n,
                term: t,
                bound: prev_bound,
            });
        }
        acc.add(t);
        let bound = tail_bound(n);
        if bound <= tol {
            return Ok(SeriesSum {
                value: acc.value(),
                remainder_bound: bound,
                terms: n - start + 1,
            });
        }
        if n - start >= MAX_TERMS {
            return Err(Error::SeriesNonConvergence {
                tol,
                remainder: bound,
            });
        }
        prev_bound = bound;
        n += 1;
    }
}

/// `Σ_{k>n} k^{-s}` for real `s > 1` by Euler–Maclaurin with three
/// correction terms.
///
/// The neglected term is of order `s⁵ n^{-s-5}`, below `1e-16` for
/// `n ≥ 50` and moderate `s`. For smaller `n` the leading terms are summed
/// directly first.
pub fn zeta_tail(s: f64, n: usize) -> f64 {
    const SWITCH: usize = 50;
    let mut direct = CompensatedSum::new();
    let mut m = n;
    while m < SWITCH {
        m += 1;
        direct.add(libm::pow(m as f64, -s));
    }
    let x = m as f64;
    let f = libm::pow(x, -s);
    // Σ_{k>m} f(k) = ∫_m^∞ f − f(m)/2 − Σ B_{2j}/(2j)! f^{(2j−1)}(m)
    let integral = x * f / (s - 1.0);
    let b2 = s * f / (12.0 * x);
    let b4 = s * (s + 1.0) * (s + 2.0) * f / (720.0 * x * x * x);
    let b6 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * f / (30_240.0 * libm::pow(x, 5.0));
    direct.value() + integral - 0.5 * f + b2 - b4 + b6
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn zeta_four_to_twelve_digits() {
        let r = series_sum(
            |n| 1.0 / libm::pow(n as f64, 4.0),
            |n| 1.0 / (3.0 * libm::pow(n as f64, 3.0)),
            1,
            1e-13,
        )
        .unwrap();
        assert!((r.value - libm::pow(PI, 4.0) / 90.0).abs() < 1e-12);
        assert!(r.remainder_bound <= 1e-13);
    }

    #[test]
    fn zero_terms_sum_to_zero() {
        let r = series_sum(|_| 0.0, |_| 0.0, 1, 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.terms, 1);
    }

    #[test]
    fn violated_bound_is_detected() {
        let err = series_sum(|n| 1.0 / n as f64, |n| 1e-3 / n as f64, 1, 1e-9).unwrap_err();
        assert!(matches!(err, Error::SeriesBoundViolation { index: 2, .. }));
    }

    #[test]
    fn zeta_tail_matches_closed_forms() {
        // Σ_{k≥1} k^-2 = π²/6, Σ_{k≥1} k^-4 = π⁴/90.
        assert!((zeta_tail(2.0, 0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta_tail(4.0, 0) - libm::pow(PI, 4.0) / 90.0).abs() < 1e-15);
        let direct: f64 = (1..=100).map(|k| 1.0 / (k * k) as f64).sum();
        assert!((zeta_tail(2.0, 100) - (PI * PI / 6.0 - direct)).abs() < 1e-14);
    }
}
