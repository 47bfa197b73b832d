//! Polarizability spectra, the Drude model and the thermal factors built
//! from them.
//!
//! A spectrum is the weight `s(m) = m²α(m²)` on frequencies `m = ħω`
//! (`ħ = 1`). The imaginary-axis polarizability is
//! `h(K²) = ∫ s(m)/(K² + m²) d(m²)` and the spectrum is recovered from the
//! discontinuity `s(m) = −(1/π) Im h(−m² + iγ)`, `γ → 0⁺`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::quadrature::{quad_finite_with, quad_semi_infinite_scaled, QuadOptions};
use crate::numerics::series::series_sum;

/// Slope `D` of a linear spectrum `s(m) = D·m`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct SpectralAmplitude {
    pub d: f64,
}

impl SpectralAmplitude {
    pub fn new(d: f64) -> Result<Self> {
        if d.is_finite() && d >= 0.0 {
            Ok(Self { d })
        } else {
            Err(Error::domain("D", d, "must be finite and >= 0"))
        }
    }
}

/// Imaginary-axis polarizability `h` as a function of complex `K²`.
pub type AnalyticH = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A polarizability spectrum.
#[derive(Clone)]
pub enum SpectralDensity {
    /// `s(m) = D·m`, optionally cut off above `m_max`.
    Linear { d: f64, m_max: Option<f64> },
    /// Sharp lines: `s` is a sum of point masses `weight·δ(m² − m0²)`.
    Lines(Vec<(f64, f64)>),
    /// Samples `(m, s(m))`, linearly interpolated, zero outside the table.
    Tabulated { m: Vec<f64>, s: Vec<f64> },
    /// `h(K²)` given directly.
    Analytic(AnalyticH),
}

impl fmt::Debug for SpectralDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { d, m_max } => f
                .debug_struct("Linear")
                .field("d", d)
                .field("m_max", m_max)
                .finish(),
            Self::Lines(l) => f.debug_tuple("Lines").field(l).finish(),
            Self::Tabulated { m, s } => f
                .debug_struct("Tabulated")
                .field("points", &m.len())
                .field("m_range", &(m.first(), m.last()))
                .field("s_len", &s.len())
                .finish(),
            Self::Analytic(_) => f.write_str("Analytic(..)"),
        }
    }
}

impl SpectralDensity {
    pub fn linear(amplitude: SpectralAmplitude) -> Self {
        Self::Linear {
            d: amplitude.d,
            m_max: None,
        }
    }

    pub fn linear_truncated(amplitude: SpectralAmplitude, m_max: f64) -> Result<Self> {
        if !(m_max.is_finite() && m_max > 0.0) {
            return Err(Error::domain("m_max", m_max, "must be finite and > 0"));
        }
        Ok(Self::Linear {
            d: amplitude.d,
            m_max: Some(m_max),
        })
    }

    pub fn tabulated(m: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        let spec = Self::Tabulated { m, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn analytic<F>(h: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::Analytic(Arc::new(h))
    }

    /// Checks passivity (`s ≥ 0`) and the shape of tabulated data.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Linear { d, m_max } => {
                SpectralAmplitude::new(*d)?;
                if let Some(m) = m_max {
                    if !(m.is_finite() && *m > 0.0) {
                        return Err(Error::domain("m_max", *m, "must be finite and > 0"));
                    }
                }
            }
            Self::Lines(lines) => {
                for &(m0, w) in lines {
                    if !(m0.is_finite() && m0 >= 0.0 && w.is_finite() && w >= 0.0) {
                        return Err(Error::InvalidSpectrum(
                            "line positions and weights must be finite and >= 0",
                        ));
                    }
                }
            }
            Self::Tabulated { m, s } => {
                if m.len() != s.len() {
                    return Err(Error::InvalidSpectrum("m and s columns differ in length"));
                }
                if m.len() < 2 {
                    return Err(Error::InvalidSpectrum(
                        "a tabulated spectrum needs at least two points",
                    ));
                }
                if m.iter().chain(s).any(|v| !v.is_finite()) {
                    return Err(Error::InvalidSpectrum("non-finite sample"));
                }
                if m[0] < 0.0 {
                    return Err(Error::InvalidSpectrum("frequencies must be >= 0"));
                }
                if m.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidSpectrum(
                        "frequencies must be strictly increasing",
                    ));
                }
                if s.iter().any(|&v| v < 0.0) {
                    return Err(Error::InvalidSpectrum(
                        "spectral weight must be >= 0 (passivity)",
                    ));
                }
            }
            Self::Analytic(_) => {}
        }
        Ok(())
    }

    /// Upper end of the support, if bounded.
    pub fn support_end(&self) -> Option<f64> {
        match self {
            Self::Linear { m_max, .. } => *m_max,
            Self::Lines(l) => Some(l.iter().map(|x| x.0).fold(0.0, f64::max)),
            Self::Tabulated { m, .. } => m.last().copied(),
            Self::Analytic(_) => None,
        }
    }

    /// Spectral weight `s(m) = m²α(m²)`.
    pub fn density(&self, m: f64) -> Result<f64> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::domain("m", m, "must be finite and >= 0"));
        }
        match self {
            Self::Linear { d, m_max } => Ok(match m_max {
                Some(top) if m > *top => 0.0,
                _ => d * m,
            }),
            Self::Lines(_) => Err(Error::InvalidSpectrum(
                "sharp lines have no pointwise density",
            )),
            Self::Tabulated { m: ms, s } => Ok(interpolate(ms, s, m)),
            Self::Analytic(h) => {
                if m == 0.0 {
                    return Ok(0.0);
                }
                spectrum_from_h(&**h, m, &DEFAULT_GAMMA_LADDER)
            }
        }
    }
}

fn interpolate(ms: &[f64], s: &[f64], m: f64) -> f64 {
    if m < ms[0] || m > ms[ms.len() - 1] {
        return 0.0;
    }
    let i = ms.partition_point(|&x| x <= m).clamp(1, ms.len() - 1);
    let (m0, m1) = (ms[i - 1], ms[i]);
    let t = (m - m0) / (m1 - m0);
    s[i - 1] + t * (s[i] - s[i - 1])
}

/// `h(K²) = ∫ s(m)/(K² + m²) d(m²)`.
///
/// Linear spectra need a cutoff: without one the integral diverges.
pub fn h_from_spectrum(spec: &SpectralDensity, k2: f64) -> Result<f64> {
    if !(k2.is_finite() && k2 >= 0.0) {
        return Err(Error::domain("K2", k2, "must be finite and >= 0"));
    }
    match spec {
        SpectralDensity::Linear { d, m_max } => {
            let top = m_max.ok_or(Error::DivergentIntegral(
                "h(K²) of an untruncated linear spectrum diverges; supply m_max",
            ))?;
            let k = libm::sqrt(k2);
            let tail = if k == 0.0 {
                0.0
            } else {
                k * libm::atan(top / k)
            };
            Ok(2.0 * d * (top - tail))
        }
        SpectralDensity::Lines(lines) => Ok(lines.iter().map(|&(m0, w)| w / (k2 + m0 * m0)).sum()),
        SpectralDensity::Tabulated { m, s } => {
            let mut total = 0.0;
            for i in 1..m.len() {
                let f = |x: f64| interpolate(m, s, x) * 2.0 * x / (k2 + x * x);
                total += quad_finite_with(f, m[i - 1], m[i], QuadOptions::with_tol(1e-13))?.value;
            }
            Ok(total)
        }
        SpectralDensity::Analytic(h) => Ok(h(Complex64::new(k2, 0.0)).re),
    }
}

/// Fractions `f_k` of the γ ladder `γ_k = f_k·m²`.
pub const DEFAULT_GAMMA_LADDER: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// `s(m) = −(1/π) Im h(−m² + iγ)` extrapolated linearly to `γ = 0`.
///
/// `γ` is taken relative to `m²`, the scale of the real part it perturbs.
/// Non-finite evaluations, or a ladder whose curvature is comparable to its
/// slope (a sign that `h` is not analytic near the cut), are reported as
/// extraction failures.
pub fn spectrum_from_h(h: &dyn Fn(Complex64) -> Complex64, m: f64, ladder: &[f64]) -> Result<f64> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::domain("m", m, "must be finite and > 0"));
    }
    if ladder.len() < 2 || ladder.iter().any(|&f| !(f > 0.0 && f.is_finite())) {
        return Err(Error::ExtractionFailure {
            m,
            reason: "the gamma ladder needs at least two positive rungs",
        });
    }
    let m2 = m * m;
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(ladder.len());
    for &f in ladder {
        let gamma = f * m2;
        let v = -h(Complex64::new(-m2, gamma)).im / PI;
        if !v.is_finite() {
            return Err(Error::ExtractionFailure {
                m,
                reason: "h is not finite near the real axis",
            });
        }
        pts.push((gamma, v));
    }
    // Least-squares line through (γ, value); the intercept is the estimate.
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let scale = pts.iter().map(|p| libm::fabs(p.1)).fold(0.0, f64::max);
    let misfit = pts
        .iter()
        .map(|p| libm::fabs(p.1 - intercept - slope * p.0))
        .fold(0.0, f64::max);
    if misfit > 0.05 * scale.max(1e-300) && misfit > 1e-14 {
        return Err(Error::ExtractionFailure {
            m,
            reason: "gamma ladder is not linear; h may not be analytic here",
        });
    }
    Ok(intercept)
}

/// Drude metal parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParams {
    pub omega_p: f64,
    pub nu: f64,
    pub rho: f64,
}

impl DrudeParams {
    pub fn new(omega_p: f64, nu: f64, rho: f64) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return Err(Error::domain("omega_p", omega_p, "must be finite and > 0"));
        }
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::domain("nu", nu, "must be finite and >= 0"));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::domain("rho", rho, "must be finite and > 0"));
        }
        Ok(Self { omega_p, nu, rho })
    }
}

/// `ε(ζ) = 1 + ω_p²/(ζ(ζ + ν))` on the imaginary-frequency axis.
pub fn drude_epsilon(p: &DrudeParams, zeta: f64) -> Result<f64> {
    if !(zeta > 0.0) {
        return Err(Error::domain(
            "zeta",
            zeta,
            "Drude permittivity diverges at zeta <= 0",
        ));
    }
    Ok(1.0 + p.omega_p * p.omega_p / (zeta * (zeta + p.nu)))
}

/// `h = (ε − 1)/((ε + 1) 2πρ)`.
pub fn drude_polarizability_h(p: &DrudeParams, zeta: f64) -> Result<f64> {
    drude_epsilon(p, zeta)?;
    // (ε−1)/(ε+1) = ω_p²/(2ζ(ζ+ν) + ω_p²), exact and free of cancellation.
    let wp2 = p.omega_p * p.omega_p;
    Ok(wp2 / (2.0 * zeta * (zeta + p.nu) + wp2) / (2.0 * PI * p.rho))
}

/// [`drude_polarizability_h`] continued to complex `K²` with `ζ = √(K²)`
/// on the principal branch.
pub fn drude_h_complex(p: &DrudeParams, k2: Complex64) -> Complex64 {
    let zeta = k2.sqrt();
    let wp2 = p.omega_p * p.omega_p;
    Complex64::new(wp2, 0.0) / (2.0 * zeta * (zeta + p.nu) + wp2) / (2.0 * PI * p.rho)
}

/// Analytic spectrum of a Drude half-space.
pub fn drude_spectrum(p: DrudeParams) -> SpectralDensity {
    SpectralDensity::analytic(move |z| drude_h_complex(&p, z))
}

/// Low-frequency slope `D = ν/(ρ(πω_p)²)` of the Drude spectrum.
pub fn drude_d(p: &DrudeParams) -> SpectralAmplitude {
    SpectralAmplitude {
        d: p.nu / (p.rho * PI * PI * p.omega_p * p.omega_p),
    }
}

/// `H = ω₁ω₂α₁α₂ / (4 sinh(βω₁/2) sinh(βω₂/2))`.
pub fn thermal_h(omega1: f64, omega2: f64, alpha1: f64, alpha2: f64, beta: f64) -> Result<f64> {
    for (name, v) in [
        ("omega1", omega1),
        ("omega2", omega2),
        ("alpha1", alpha1),
        ("alpha2", alpha2),
        ("beta", beta),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(name, v, "must be finite and > 0"));
        }
    }
    let s1 = libm::sinh(0.5 * beta * omega1);
    let s2 = libm::sinh(0.5 * beta * omega2);
    Ok(omega1 * omega2 * alpha1 * alpha2 / (4.0 * s1) / s2)
}

/// `I = 4π⁴/15`.
pub const UNIVERSAL_I: f64 = 4.0 * PI * PI * PI * PI / 15.0;

/// `I = 4! Σ n⁻⁴` by certified series summation.
pub fn universal_i_series() -> Result<f64> {
    let s = series_sum(
        |n| 1.0 / libm::pow(n as f64, 4.0),
        |n| 1.0 / (3.0 * libm::pow(n as f64, 3.0)),
        1,
        1e-15,
    )?;
    Ok(24.0 * s.value)
}

/// `I = ∫₀^∞ x⁴ e^{−x}/(1 − e^{−x})² dx` by quadrature.
pub fn universal_i_quadrature() -> Result<f64> {
    let f = |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        let d = -libm::expm1(-x);
        x * x * x * x * libm::exp(-x) / (d * d)
    };
    Ok(quad_semi_infinite_scaled(f, 0.0, 4.0, QuadOptions::with_tol(1e-14))?.value)
}

/// `I = 4π⁴/15`, after checking that the series and quadrature routes agree.
pub fn universal_i() -> Result<f64> {
    let series = universal_i_series()?;
    let quad = universal_i_quadrature()?;
    let difference = libm::fabs(series - quad).max(libm::fabs(quad - UNIVERSAL_I));
    if difference > 1e-10 {
        return Err(Error::Consistency {
            what: "universal integral I",
            difference,
        });
    }
    Ok(UNIVERSAL_I)
}

/// `H₀ = (2π/β⁴) D₁D₂ I` for linear spectra.
pub fn smoothed_h0_linear(d1: SpectralAmplitude, d2: SpectralAmplitude, beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::domain("beta", beta, "must be finite and > 0"));
    }
    Ok(2.0 * PI * d1.d * d2.d * UNIVERSAL_I / (beta * beta * beta * beta))
}

/// `H₀ = (πβ/2) ∫₀^∞ m² s₁(m) s₂(m) / sinh²(βm/2) dm` by quadrature.
pub fn smoothed_h0_quadrature(
    spec1: &SpectralDensity,
    spec2: &SpectralDensity,
    beta: f64,
) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::domain("beta", beta, "must be finite and > 0"));
    }
    for s in [spec1, spec2] {
        if matches!(s, SpectralDensity::Lines(_)) {
            return Err(Error::InvalidSpectrum(
                "sharp lines give a delta-function H; use the sharp-oscillator forms",
            ));
        }
        s.validate()?;
    }
    let f = |m: f64| -> f64 {
        if m == 0.0 {
            return 0.0;
        }
        let sh = libm::sinh(0.5 * beta * m);
        let (Ok(a), Ok(b)) = (spec1.density(m), spec2.density(m)) else {
            return f64::NAN;
        };
        m * m * a * b / (sh * sh)
    };
    let top = match (spec1.support_end(), spec2.support_end()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    };
    let opts = QuadOptions::with_tol(1e-13);
    let integral = match top {
        Some(t) => quad_finite_with(f, 0.0, t, opts)?,
        None => quad_semi_infinite_scaled(f, 0.0, 4.0 / beta, opts)?,
    };
    if !integral.value.is_finite() {
        return Err(Error::DivergentIntegral("H0 integrand is not finite"));
    }
    Ok(0.5 * PI * beta * integral.value)
}

/// `H₀` in closed form for untruncated linear spectra, by quadrature
/// otherwise.
pub fn smoothed_h0(spec1: &SpectralDensity, spec2: &SpectralDensity, beta: f64) -> Result<f64> {
    match (spec1, spec2) {
        (
            SpectralDensity::Linear { d: d1, m_max: None },
            SpectralDensity::Linear { d: d2, m_max: None },
        ) => smoothed_h0_linear(
            SpectralAmplitude::new(*d1)?,
            SpectralAmplitude::new(*d2)?,
            beta,
        ),
        _ => smoothed_h0_quadrature(spec1, spec2, beta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(d: f64) -> SpectralDensity {
        SpectralDensity::linear(SpectralAmplitude::new(d).unwrap())
    }

    #[test]
    fn h_of_a_single_line() {
        let spec = SpectralDensity::Lines(alloc::vec![(1.5, 0.7)]);
        assert!((h_from_spectrum(&spec, 2.0).unwrap() - 0.7 / (2.0 + 2.25)).abs() < 1e-15);
        assert!(spec.density(1.0).is_err());
    }

    #[test]
    fn truncated_linear_h_closed_form_vs_quadrature() {
        let (d, top) = (0.3, 5.0);
        let spec =
            SpectralDensity::linear_truncated(SpectralAmplitude::new(d).unwrap(), top).unwrap();
        for &k2 in &[0.0, 0.01, 1.0, 7.0, 100.0] {
            let q = quad_finite_with(
                |m| d * m * 2.0 * m / (k2 + m * m),
                0.0,
                top,
                QuadOptions::with_tol(1e-14),
            )
            .unwrap()
            .value;
            let closed = h_from_spectrum(&spec, k2).unwrap();
            assert!((closed - q).abs() <= 1e-10 * q.abs(), "K² = {k2}");
        }
        assert!(matches!(
            h_from_spectrum(&lin(1.0), 1.0),
            Err(Error::DivergentIntegral(_))
        ));
    }

    #[test]
    fn sum_rule_at_large_k() {
        let (d, top) = (0.3, 2.0);
        let spec =
            SpectralDensity::linear_truncated(SpectralAmplitude::new(d).unwrap(), top).unwrap();
        // ∫ s d(m²) = 2D M³/3.
        let moment = 2.0 * d * top * top * top / 3.0;
        let k2 = 1e8;
        let v = k2 * h_from_spectrum(&spec, k2).unwrap();
        assert!((v / moment - 1.0).abs() < 1e-6);
    }

    #[test]
    fn tabulated_matches_linear() {
        let m: Vec<f64> = (0..=200).map(|i| i as f64 * 0.025).collect();
        let s: Vec<f64> = m.iter().map(|x| 0.3 * x).collect();
        let tab = SpectralDensity::tabulated(m, s).unwrap();
        let lin =
            SpectralDensity::linear_truncated(SpectralAmplitude::new(0.3).unwrap(), 5.0).unwrap();
        let a = h_from_spectrum(&tab, 1.3).unwrap();
        let b = h_from_spectrum(&lin, 1.3).unwrap();
        assert!((a - b).abs() < 1e-11);
        assert!((tab.density(1.2345).unwrap() - 0.3 * 1.2345).abs() < 1e-14);
        assert_eq!(tab.density(6.0).unwrap(), 0.0);
    }

    #[test]
    fn tabulated_validation() {
        assert!(SpectralDensity::tabulated(alloc::vec![0.0, 1.0], alloc::vec![0.0]).is_err());
        assert!(SpectralDensity::tabulated(alloc::vec![0.0, 0.0], alloc::vec![0.0, 1.0]).is_err());
        assert!(SpectralDensity::tabulated(alloc::vec![0.0, 1.0], alloc::vec![0.0, -1.0]).is_err());
    }

    #[test]
    fn linear_round_trip_through_h() {
        let (d, top) = (0.8, 10.0);
        let h = move |z: Complex64| {
            let k = z.sqrt();
            2.0 * d * (top - k * (Complex64::new(top, 0.0) / k).atan())
        };
        for &m in &[0.05, 0.2, 0.5, 1.0] {
            let s = spectrum_from_h(&h, m, &DEFAULT_GAMMA_LADDER).unwrap();
            assert!((s / (d * m) - 1.0).abs() < 0.01, "m = {m}: {s}");
        }
    }

    #[test]
    fn lossless_h_has_no_spectrum_off_resonance() {
        let h = |z: Complex64| 1.0 / (z + 1.0);
        let s = spectrum_from_h(&h, 0.5, &DEFAULT_GAMMA_LADDER).unwrap();
        // What survives the linear extrapolation is the O(γ³) remainder.
        assert!(s.abs() < 1e-8, "{s}");
    }

    #[test]
    fn drude_values() {
        let p = DrudeParams::new(1.0, 1.0, 1.0).unwrap();
        assert!((drude_epsilon(&p, 1.0).unwrap() - 1.5).abs() < 1e-15);
        assert!(drude_epsilon(&p, 0.0).is_err());
        assert!((drude_epsilon(&p, 1e9).unwrap() - 1.0).abs() < 1e-15);
        let p = DrudeParams::new(9.0, 0.1, 1.0).unwrap();
        assert!((drude_d(&p).d - 0.1 / (81.0 * PI * PI)).abs() < 1e-18);
        assert!((drude_d(&p).d - 1.2508e-4).abs() < 1e-8);
        let e = drude_epsilon(&p, 0.7).unwrap();
        let direct = (e - 1.0) / (e + 1.0) / (2.0 * PI);
        assert!((drude_polarizability_h(&p, 0.7).unwrap() - direct).abs() < 1e-15);
        assert!((drude_polarizability_h(&p, 1e-9).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-9);
        assert!(drude_polarizability_h(&p, 1e12).unwrap() < 1e-20);
        let z = drude_h_complex(&p, Complex64::new(0.49, 0.0));
        assert!((z.re - drude_polarizability_h(&p, 0.7).unwrap()).abs() < 1e-15);
        assert_eq!(drude_d(&DrudeParams::new(9.0, 0.0, 1.0).unwrap()).d, 0.0);
    }

    #[test]
    fn drude_slope_from_extraction() {
        let p = DrudeParams::new(9.0, 0.1, 1.0).unwrap();
        let spec = drude_spectrum(p);
        let d = drude_d(&p).d;
        for &m in &[1e-3, 1e-2, 0.1] {
            let s = spec.density(m).unwrap();
            assert!((s / (d * m) - 1.0).abs() < 0.01, "m = {m}: {}", s / (d * m));
        }
    }

    #[test]
    fn thermal_h_values() {
        let h = thermal_h(2.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        let s = libm::sinh(1.0);
        assert!((h - 1.0 / (s * s)).abs() < 1e-15);
        assert!((h - 0.724062).abs() < 1e-6);
        assert_eq!(
            thermal_h(0.3, 1.1, 2.0, 0.5, 0.7),
            thermal_h(1.1, 0.3, 0.5, 2.0, 0.7)
        );
        assert!(thermal_h(1.0, 1.0, 1.0, 1.0, 1e4).unwrap() == 0.0);
        assert!(thermal_h(0.0, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn universal_integral_routes() {
        assert!((universal_i().unwrap() - 25.975_757_609_067_3).abs() < 1e-12);
        let s = universal_i_series().unwrap();
        let q = universal_i_quadrature().unwrap();
        assert!((s - q).abs() < 1e-12, "{s} vs {q}");
        let mut prev = 0.0;
        let mut partial = 0.0;
        for n in 1..50 {
            partial += 24.0 / libm::pow(n as f64, 4.0);
            assert!(partial > prev && partial < UNIVERSAL_I);
            prev = partial;
        }
    }

    #[test]
    fn h0_linear() {
        let one = SpectralAmplitude::new(1.0).unwrap();
        let h = smoothed_h0_linear(one, one, 1.0).unwrap();
        assert!((h - 2.0 * PI * UNIVERSAL_I).abs() < 1e-12);
        assert!((h - 8.0 * libm::pow(PI, 5.0) / 15.0).abs() < 1e-12);
        assert!((h - 163.2105).abs() < 1e-4);
        let h2 = smoothed_h0_linear(one, one, 2.0).unwrap();
        assert!((h2 / h - 1.0 / 16.0).abs() < 1e-15);
        for &beta in &[0.5, 1.0, 3.0] {
            let q = smoothed_h0_quadrature(&lin(0.7), &lin(1.3), beta).unwrap();
            let c = smoothed_h0(&lin(0.7), &lin(1.3), beta).unwrap();
            assert!((q / c - 1.0).abs() < 1e-9, "beta {beta}: {q} vs {c}");
        }
    }

    #[test]
    fn h0_rejects_lines() {
        let lines = SpectralDensity::Lines(alloc::vec![(1.0, 1.0)]);
        assert!(smoothed_h0(&lines, &lin(1.0), 1.0).is_err());
    }
}
