//! Kubo response of the pair to the perturbation `S = ½(p_x y/m_x − x p_y/m_y)`
//! and the friction amplitudes that follow from it (`ħ = 1`).
//!
//! Time-domain kernels are exact. Sharp-frequency friction is singular
//! (`∝ δ(ω₁ − ω₂)`) and is returned as a [`DeltaCoefficient`], never as a
//! number.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::materials_spectral::{SpectralAmplitude, SpectralDensity};
use crate::numerics::quadrature::{quad_finite_with, QuadOptions};

/// One oscillator of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscState {
    pub omega: f64,
    pub n_mean: f64,
    pub mass: f64,
}

impl OscState {
    pub fn new(omega: f64, n_mean: f64, mass: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::domain("omega", omega, "must be finite and > 0"));
        }
        if !(n_mean.is_finite() && n_mean >= 0.0) {
            return Err(Error::domain("n_mean", n_mean, "must be finite and >= 0"));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::domain("mass", mass, "must be finite and > 0"));
        }
        Ok(Self {
            omega,
            n_mean,
            mass,
        })
    }

    /// Equilibrium occupation `⟨n⟩ = 1/(e^{βω} − 1)`.
    pub fn thermal(omega: f64, mass: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::domain("beta", beta, "must be > 0"));
        }
        let n = 1.0 / libm::expm1(beta * omega);
        Self::new(omega, if n.is_finite() { n } else { 0.0 }, mass)
    }

    /// Thermal state of a particle with polarizability `α`, using `1/m = ω²α`.
    pub fn thermal_polarizable(omega: f64, polarizability: f64, beta: f64) -> Result<Self> {
        if !(polarizability.is_finite() && polarizability > 0.0) {
            return Err(Error::domain(
                "polarizability",
                polarizability,
                "must be finite and > 0",
            ));
        }
        Self::thermal(omega, 1.0 / (omega * omega * polarizability), beta)
    }

    /// `2⟨n⟩ + 1`.
    pub fn occupation_factor(&self) -> f64 {
        2.0 * self.n_mean + 1.0
    }

    /// `α = 1/(mω²)`.
    pub fn polarizability(&self) -> f64 {
        1.0 / (self.mass * self.omega * self.omega)
    }
}

/// Prefactor of a δ(ω₁ − ω₂) singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaCoefficient {
    pub amplitude: f64,
    pub at_frequency: f64,
}

/// `L⁺ = (2n+1)cos ωt + i sin ωt`, `L⁻ = cos ωt + i(2n+1) sin ωt`.
pub fn l_kernels(n: f64, omega: f64, t: f64) -> (Complex64, Complex64) {
    let (s, c) = libm::sincos(omega * t);
    let a = 2.0 * n + 1.0;
    (Complex64::new(a * c, s), Complex64::new(c, a * s))
}

/// The four-term commutator kernel in expanded trigonometric form,
/// `(i/2){(ω₁²+ω₂²)[A c₁s₂ + B c₂s₁] − 2ω₁ω₂[A c₂s₁ + B c₁s₂]}`.
pub fn m_full(osc1: &OscState, osc2: &OscState, t: f64) -> Complex64 {
    let (w1, w2) = (osc1.omega, osc2.omega);
    let (a, b) = (osc1.occupation_factor(), osc2.occupation_factor());
    let (s1, c1) = libm::sincos(w1 * t);
    let (s2, c2) = libm::sincos(w2 * t);
    let im = 0.5
        * ((w1 * w1 + w2 * w2) * (a * c1 * s2 + b * c2 * s1)
            - 2.0 * w1 * w2 * (a * c2 * s1 + b * c1 * s2));
    Complex64::new(0.0, im)
}

/// The same kernel assembled from the `L±` matrix elements,
/// `¼[(ω₁²+ω₂²)(L₁⁺L₂⁺ − c.c.) − 2ω₁ω₂(L₁⁻L₂⁻ − c.c.)]`.
pub fn m_full_from_kernels(osc1: &OscState, osc2: &OscState, t: f64) -> Complex64 {
    let (w1, w2) = (osc1.omega, osc2.omega);
    let (p1, m1) = l_kernels(osc1.n_mean, w1, t);
    let (p2, m2) = l_kernels(osc2.n_mean, w2, t);
    let pp = p1 * p2;
    let mm = m1 * m2;
    0.25 * ((w1 * w1 + w2 * w2) * (pp - pp.conj()) - 2.0 * w1 * w2 * (mm - mm.conj()))
}

/// Small-`Ω` form `iω₁ω₂(B − A) sin Ωt`, `Ω = ω₁ − ω₂`.
pub fn m_reduced(osc1: &OscState, osc2: &OscState, t: f64) -> Complex64 {
    let big_omega = osc1.omega - osc2.omega;
    let im = osc1.omega
        * osc2.omega
        * (osc2.occupation_factor() - osc1.occupation_factor())
        * libm::sin(big_omega * t);
    Complex64::new(0.0, im)
}

/// `(i/2)Ω²[A cos ω₁t sin ω₂t + B cos ω₂t sin ω₁t]`, the exact difference
/// `m_full − m_reduced`.
pub fn m_remainder(osc1: &OscState, osc2: &OscState, t: f64) -> Complex64 {
    let big_omega = osc1.omega - osc2.omega;
    let (s1, c1) = libm::sincos(osc1.omega * t);
    let (s2, c2) = libm::sincos(osc2.omega * t);
    let im = 0.5
        * big_omega
        * big_omega
        * (osc1.occupation_factor() * c1 * s2 + osc2.occupation_factor() * c2 * s1);
    Complex64::new(0.0, im)
}

/// `D = 1/(2m₁m₂ω₁ω₂)`.
pub fn response_d(osc1: &OscState, osc2: &OscState) -> f64 {
    1.0 / (2.0 * osc1.mass * osc2.mass * osc1.omega * osc2.omega)
}

/// `φ(t) = (1/i)(D/2) M(t)`; real because `M` is purely imaginary.
pub fn response_phi(osc1: &OscState, osc2: &OscState, t: f64, d: f64) -> Complex64 {
    m_full(osc1, osc2, t) * Complex64::new(0.0, -0.5 * d)
}

/// `g(w, η) = ∫₀^∞ t e^{−ηt} sin(wt) dt = 2ηw/(η² + w²)²`.
pub fn nascent_delta_g(w: f64, eta: f64) -> Result<f64> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::domain("eta", eta, "must be finite and > 0"));
    }
    let q = eta * eta + w * w;
    Ok(2.0 * eta * w / (q * q))
}

/// `∫₀^∞ t e^{−ηt} cos(ω₁t) sin(ω₂t) dt = ½[g(ω₁+ω₂) − g(ω₁−ω₂)]`.
pub fn nascent_delta_cos_sin(omega1: f64, omega2: f64, eta: f64) -> Result<f64> {
    Ok(0.5 * (nascent_delta_g(omega1 + omega2, eta)? - nascent_delta_g(omega1 - omega2, eta)?))
}

/// `coth(βω₁/2) − coth(βω₂/2)`, evaluated as
/// `−sinh(βΩ/2)/(sinh(βω₁/2) sinh(βω₂/2))` to avoid cancellation.
pub fn coth_difference_limit(beta: f64, omega1: f64, omega2: f64) -> f64 {
    let x1 = 0.5 * beta * omega1;
    let x2 = 0.5 * beta * omega2;
    -libm::sinh(x1 - x2) / libm::sinh(x1) / libm::sinh(x2)
}

/// Leading term of [`coth_difference_limit`] as `ω₂ → ω₁`:
/// `−(βΩ/2)/sinh²(βω₁/2)`. Negative for `ω₂ < ω₁` since coth decreases.
pub fn coth_difference_leading(beta: f64, omega1: f64, omega2: f64) -> f64 {
    let s = libm::sinh(0.5 * beta * omega1);
    -0.5 * beta * (omega1 - omega2) / (s * s)
}

/// δ(ω₁ − ω₂) amplitude of the friction force between sharp oscillators,
/// `−πβG/(8m₁m₂ sinh²(βω₁/2))`.
///
/// On the δ support `ω₂ = ω₁`; `osc2` contributes only its mass. With
/// `1/m_i = ω_i²α_i` this equals `−G·H·πβω₁²/2` (see
/// [`crate::friction_forces::pair_force_sharp`]), so the factor `ω₁²` of
/// that form is already contained in the masses here.
pub fn sharp_friction_amplitude(
    osc1: &OscState,
    osc2: &OscState,
    beta: f64,
    g: f64,
) -> Result<DeltaCoefficient> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::domain("beta", beta, "must be finite and > 0"));
    }
    if !g.is_finite() {
        return Err(Error::domain("G", g, "must be finite"));
    }
    let s = libm::sinh(0.5 * beta * osc1.omega);
    let amplitude = -PI * beta * g / (8.0 * osc1.mass * osc2.mass * s * s);
    Ok(DeltaCoefficient {
        amplitude: if amplitude == 0.0 { 0.0 } else { amplitude },
        at_frequency: osc1.omega,
    })
}

/// Two-sinusoid form of the response, `φ = C₋ sin ω₋t + C₊ sin ω₊t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSinusoids {
    pub c_minus: f64,
    pub c_plus: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
}

impl TwoSinusoids {
    pub fn eval(&self, t: f64) -> f64 {
        self.c_minus * libm::sin(self.omega_minus * t)
            + self.c_plus * libm::sin(self.omega_plus * t)
    }
}

/// `ω± = |ω₁ ± ω₂|`, `C± = (ω∓/2)² H sinh(βω±/2)` with `H` the thermal
/// factor of the pair.
pub fn c_plus_minus(osc1: &OscState, osc2: &OscState, beta: f64, h: f64) -> TwoSinusoids {
    let omega_minus = libm::fabs(osc1.omega - osc2.omega);
    let omega_plus = osc1.omega + osc2.omega;
    let q = |w: f64| 0.25 * w * w;
    TwoSinusoids {
        c_minus: q(omega_plus) * h * libm::sinh(0.5 * beta * omega_minus),
        c_plus: q(omega_minus) * h * libm::sinh(0.5 * beta * omega_plus),
        omega_minus,
        omega_plus,
    }
}

/// `T → 0` limit of `C₊`: `½(ω₋/2)² ω₁ω₂α₁α₂`.
pub fn c_plus_zero_temperature(omega1: f64, omega2: f64, alpha1: f64, alpha2: f64) -> f64 {
    let wm = omega1 - omega2;
    0.5 * 0.25 * wm * wm * omega1 * omega2 * alpha1 * alpha2
}

/// `H_P = (π/120) D₁D₂`.
pub fn h_p(d1: SpectralAmplitude, d2: SpectralAmplitude) -> f64 {
    PI / 120.0 * d1.d * d2.d
}

/// Energy dissipated per mode for linear spectra, `J = 2τω_v⁶ H_P`.
pub fn dissipation_j_linear(
    omega_v: f64,
    tau: f64,
    d1: SpectralAmplitude,
    d2: SpectralAmplitude,
) -> Result<f64> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::domain("tau", tau, "must be finite and > 0"));
    }
    let w2 = omega_v * omega_v;
    Ok(2.0 * tau * w2 * w2 * w2 * h_p(d1, d2))
}

/// `J(ω_v) = 2πτ|ω_v| ∫₀^{|ω_v|} (ω₋/2)² s₁(ω₁) s₂(ω₂) dω₁`, `ω₂ = |ω_v| − ω₁`,
/// by quadrature. Here `ω₁ω₂m₁m₂α₁α₂ = s₁s₂` with `m_i = ω_i`.
pub fn dissipation_j(
    omega_v: f64,
    tau: f64,
    spec1: &SpectralDensity,
    spec2: &SpectralDensity,
) -> Result<f64> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::domain("tau", tau, "must be finite and > 0"));
    }
    let w = libm::fabs(omega_v);
    if w == 0.0 {
        return Ok(0.0);
    }
    let f = |w1: f64| {
        let w2 = (w - w1).max(0.0);
        let d = w1 - w2;
        match (spec1.density(w1), spec2.density(w2)) {
            (Ok(a), Ok(b)) => 0.25 * d * d * a * b,
            _ => f64::NAN,
        }
    };
    let r = quad_finite_with(f, 0.0, w, QuadOptions::with_tol(1e-14))?;
    if !r.value.is_finite() {
        return Err(Error::InvalidSpectrum(
            "spectral density could not be evaluated on [0, |omega_v|]",
        ));
    }
    Ok(2.0 * PI * tau * w * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials_spectral::thermal_h;
    use crate::numerics::quadrature::quad_finite;

    fn osc(omega: f64, n: f64, mass: f64) -> OscState {
        OscState::new(omega, n, mass).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let (p, m) = l_kernels(0.7, 1.3, 0.0);
        assert_eq!((p, m), (Complex64::new(2.4, 0.0), Complex64::new(1.0, 0.0)));
        let (p, m) = l_kernels(0.0, 1.3, 0.4);
        let e = Complex64::new(0.0, 1.3 * 0.4).exp();
        assert!((p - e).norm() < 1e-15 && (m - e).norm() < 1e-15);
        let w = 2.1;
        for &t in &[0.1, 1.0, 7.3] {
            let (a, b) = l_kernels(0.4, w, t);
            let (c, d) = l_kernels(0.4, w, t + 2.0 * PI / w);
            assert!((a - c).norm() < 1e-12 && (b - d).norm() < 1e-12);
        }
    }

    #[test]
    fn m_kernel_forms_agree() {
        let o1 = osc(1.3, 0.2, 1.0);
        let o2 = osc(0.7, 1.5, 2.0);
        for i in 0..50 {
            let t = 0.37 * i as f64;
            let a = m_full(&o1, &o2, t);
            let b = m_full_from_kernels(&o1, &o2, t);
            assert!((a - b).norm() < 1e-12, "t = {t}");
            let r = m_reduced(&o1, &o2, t) + m_remainder(&o1, &o2, t);
            assert!((a - r).norm() < 1e-12);
        }
        assert_eq!(m_full(&o1, &o2, 0.0).norm(), 0.0);
        let o = osc(0.9, 0.3, 1.0);
        for i in 0..20 {
            assert!(m_full(&o, &o, 0.5 * i as f64).norm() < 1e-15);
        }
        assert_eq!(m_reduced(&o, &o, 3.0).norm(), 0.0);
    }

    #[test]
    fn nascent_delta_examples() {
        assert_eq!(nascent_delta_g(0.0, 0.1).unwrap(), 0.0);
        assert!(nascent_delta_g(1.0, 0.0).is_err());
        assert!(nascent_delta_cos_sin(1.0, 1.0, -1.0).is_err());
        assert_eq!(nascent_delta_cos_sin(1.3, 0.0, 0.2).unwrap(), 0.0);
    }

    #[test]
    fn nascent_delta_matches_time_domain() {
        // ∫₀^T t e^{−ηt} f(t) dt with |f| ≤ 1; the tail is below
        // e^{−ηT}(T/η + 1/η²).
        let (w1, w2, eta) = (1.0, 1.3, 0.05);
        let t_cut = 1400.0;
        let tail = libm::exp(-eta * t_cut) * (t_cut / eta + 1.0 / (eta * eta));
        assert!(tail < 1e-20);
        let opts = QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-13,
            max_subdivisions: 200_000,
        };
        let direct = quad_finite_with(
            |t| t * libm::exp(-eta * t) * libm::cos(w1 * t) * libm::sin(w2 * t),
            0.0,
            t_cut,
            opts,
        )
        .unwrap()
        .value;
        assert!((direct - nascent_delta_cos_sin(w1, w2, eta).unwrap()).abs() < 1e-9);
        let direct = quad_finite_with(
            |t| t * libm::exp(-eta * t) * libm::sin(0.3 * t),
            0.0,
            t_cut,
            opts,
        )
        .unwrap()
        .value;
        assert!((direct - nascent_delta_g(0.3, eta).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn coth_difference_sign_and_limit() {
        assert_eq!(coth_difference_limit(1.0, 1.0, 1.0), 0.0);
        assert!(coth_difference_limit(1.0, 1.0, 0.9) < 0.0);
        let x1 = 0.5f64;
        let x2 = 0.5 * 0.9;
        let naive = 1.0 / libm::tanh(x1) - 1.0 / libm::tanh(x2);
        assert!((coth_difference_limit(1.0, 1.0, 0.9) - naive).abs() < 1e-14);
        // The ratio approaches 1 linearly in Ω with slope β coth(βω₁/2)/2.
        for &big in &[1e-4, 1e-5, 1e-6] {
            let exact = coth_difference_limit(1.0, 1.0, 1.0 - big);
            let lead = coth_difference_leading(1.0, 1.0, 1.0 - big);
            let first_order = big / (2.0 * libm::tanh(0.5));
            assert!((exact / lead - 1.0 - first_order).abs() < 10.0 * big * big);
        }
        let r = coth_difference_limit(1.0, 1.0, 1.0 - 1e-5)
            / coth_difference_leading(1.0, 1.0, 1.0 - 1e-5);
        assert!((r - 1.0).abs() < 1e-4);
    }

    #[test]
    fn sharp_amplitude_example() {
        let o = osc(1.0, 0.0, 1.0);
        let a = sharp_friction_amplitude(&o, &o, 1.0, 1.0).unwrap();
        let s = libm::sinh(0.5);
        assert!((a.amplitude + PI / (8.0 * s * s)).abs() < 1e-15);
        assert!((a.amplitude + 1.4461).abs() < 1e-4);
        assert_eq!(a.at_frequency, 1.0);
        assert_eq!(
            sharp_friction_amplitude(&o, &o, 1.0, 0.0)
                .unwrap()
                .amplitude,
            0.0
        );
        let flipped = sharp_friction_amplitude(&o, &o, 1.0, -1.0).unwrap();
        assert_eq!(flipped.amplitude, -a.amplitude);
    }

    // The δ amplitude is ∫ dω₂ of −G ∫₀^∞ φ(t) t e^{−ηt} dt in the limit η → 0.
    fn pipeline(beta: f64, w1: f64, m1: f64, m2: f64, g: f64, eta: f64) -> f64 {
        let integrand = |w2: f64| {
            let o1 = OscState::thermal(w1, m1, beta).unwrap();
            let o2 = OscState::thermal(w2, m2, beta).unwrap();
            // φ = (D/2) ω₁ω₂ (B − A) sin Ωt with B − A = −(coth₁ − coth₂).
            let b_minus_a = -coth_difference_limit(beta, w1, w2);
            let phi_amp = 0.5 * response_d(&o1, &o2) * w1 * w2 * b_minus_a;
            -g * phi_amp * nascent_delta_g(w1 - w2, eta).unwrap()
        };
        let opts = QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 100_000,
        };
        let half = 0.5 * w1;
        let mut total = 0.0;
        // Split at the peak so the adaptive driver sees it.
        for (a, b) in [
            (w1 - half, w1 - 10.0 * eta),
            (w1 - 10.0 * eta, w1),
            (w1, w1 + 10.0 * eta),
            (w1 + 10.0 * eta, w1 + half),
        ] {
            total += quad_finite_with(integrand, a, b, opts).unwrap().value;
        }
        total
    }

    #[test]
    fn sharp_amplitude_from_response_pipeline() {
        for &(beta, w1, m1, m2, g) in &[(1.0, 1.0, 1.0, 1.0, 1.0), (0.7, 1.8, 0.6, 1.4, 0.3)] {
            let etas = [1e-2, 1e-3, 1e-4];
            let v: alloc::vec::Vec<f64> = etas
                .iter()
                .map(|&e| pipeline(beta, w1, m1, m2, g, e))
                .collect();
            // Richardson on the O(η) error with ratio 10.
            let r1 = (10.0 * v[1] - v[0]) / 9.0;
            let r2 = (10.0 * v[2] - v[1]) / 9.0;
            let o1 = osc(w1, 0.0, m1);
            let o2 = osc(w1, 0.0, m2);
            let expected = sharp_friction_amplitude(&o1, &o2, beta, g)
                .unwrap()
                .amplitude;
            assert!(
                (r2 / expected - 1.0).abs() < 1e-5,
                "{r1} {r2} vs {expected}"
            );
        }
    }

    #[test]
    fn delta_normalization() {
        for &eta in &[1.0, 0.1, 0.01] {
            let f = |w: f64| w * nascent_delta_g(w, eta).unwrap();
            let opts = QuadOptions::with_tol(1e-13);
            let v = 2.0
                * crate::numerics::quadrature::quad_semi_infinite_scaled(f, 0.0, eta, opts)
                    .unwrap()
                    .value;
            assert!((v - PI).abs() < 1e-8, "eta {eta}: {v}");
        }
    }

    #[test]
    fn two_sinusoid_decomposition() {
        let beta = 1.3;
        let (w1, w2, a1, a2) = (1.1, 0.6, 0.8, 2.5);
        let o1 = OscState::thermal_polarizable(w1, a1, beta).unwrap();
        let o2 = OscState::thermal_polarizable(w2, a2, beta).unwrap();
        let h = thermal_h(w1, w2, a1, a2, beta).unwrap();
        let c = c_plus_minus(&o1, &o2, beta, h);
        let d = response_d(&o1, &o2);
        for i in 0..200 {
            let t = 0.05 * i as f64;
            let phi = response_phi(&o1, &o2, t, d);
            assert!(phi.im.abs() < 1e-15);
            assert!((phi.re - c.eval(t)).abs() < 1e-10, "t = {t}");
        }
        let same = c_plus_minus(&o1, &o1, beta, h);
        assert_eq!(same.omega_minus, 0.0);
        assert_eq!(same.c_plus, 0.0);
    }

    #[test]
    fn c_plus_zero_temperature_limit() {
        let (w1, w2, a1, a2) = (1.1, 0.6, 0.8, 2.5);
        let target = c_plus_zero_temperature(w1, w2, a1, a2);
        let mut prev = f64::INFINITY;
        for &beta in &[5.0, 20.0, 80.0, 300.0] {
            let o1 = OscState::thermal_polarizable(w1, a1, beta).unwrap();
            let o2 = OscState::thermal_polarizable(w2, a2, beta).unwrap();
            let c = c_plus_minus(&o1, &o2, beta, thermal_h(w1, w2, a1, a2, beta).unwrap());
            let err = (c.c_plus / target - 1.0).abs();
            assert!(err <= prev.max(1e-13), "beta {beta}: {err} after {prev}");
            prev = err;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn dissipation_linear_spectra() {
        let d1 = SpectralAmplitude::new(0.7).unwrap();
        let d2 = SpectralAmplitude::new(1.9).unwrap();
        let s1 = SpectralDensity::linear(d1);
        let s2 = SpectralDensity::linear(d2);
        for &w in &[0.3, 1.0, -2.5] {
            let q = dissipation_j(w, 0.8, &s1, &s2).unwrap();
            let c = dissipation_j_linear(w, 0.8, d1, d2).unwrap();
            assert!((q / c - 1.0).abs() < 1e-10, "{q} vs {c}");
        }
        let r = dissipation_j_linear(2.0, 1.0, d1, d2).unwrap()
            / dissipation_j_linear(1.0, 1.0, d1, d2).unwrap();
        assert!((r - 64.0).abs() < 1e-12);
        assert_eq!(dissipation_j(0.0, 1.0, &s1, &s2).unwrap(), 0.0);
        // ∫₀^W (2x − W)² x (W − x) dx = W⁵/30.
        let w = 1.7;
        let v = quad_finite(
            |x| (2.0 * x - w) * (2.0 * x - w) * x * (w - x),
            0.0,
            w,
            1e-14,
        )
        .unwrap()
        .value;
        assert!((v - libm::pow(w, 5.0) / 30.0).abs() < 1e-13);
    }
}
