//! Coupling tensors of the magnetodielectric dipole interaction and the
//! geometric factors of particle, half-space and slab configurations
//! (`c = 1`).

use core::f64::consts::PI;

use crate::error::{require_positive as positive, Error, Result};
use crate::numerics::montecarlo::{mc_integrate, HalfSpaceSampler, McConfig, McResult};
use crate::numerics::quadrature::{quad_finite_with, quad_semi_infinite_scaled, QuadOptions};
use crate::Vec3;

pub type Tensor2 = [[f64; 3]; 3];
pub type Tensor3 = [[[f64; 3]; 3]; 3];

/// Levi-Civita symbol `ε_kij`.
pub fn levi_civita(k: usize, i: usize, j: usize) -> f64 {
    match (k, i, j) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Separation between the two particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGeometry {
    pub r: Vec3,
}

impl PairGeometry {
    pub fn new(r: Vec3) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::domain("r", f64::NAN, "must be finite"));
        }
        if r.norm() == 0.0 {
            return Err(Error::ZeroSeparation);
        }
        Ok(Self { r })
    }
}

/// A particle at height 0 below a half-space `z ≥ z0` of density `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneGeometry {
    pub z0: f64,
    pub rho: f64,
}

impl PlaneGeometry {
    pub fn new(z0: f64, rho: f64) -> Result<Self> {
        positive("z0", z0)?;
        positive("rho", rho)?;
        Ok(Self { z0, rho })
    }
}

/// Two half-spaces with a gap of width `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabGeometry {
    pub d: f64,
    pub rho1: f64,
    pub rho2: f64,
}

impl SlabGeometry {
    pub fn new(d: f64, rho1: f64, rho2: f64) -> Result<Self> {
        positive("d", d)?;
        positive("rho1", rho1)?;
        positive("rho2", rho2)?;
        Ok(Self { d, rho1, rho2 })
    }
}

fn norm_checked(r: Vec3) -> Result<f64> {
    let n = r.norm();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::ZeroSeparation);
    }
    Ok(n)
}

/// `ψ_ij = ε_kij x_k / r³`.
pub fn coupling_psi(r: Vec3) -> Result<Tensor2> {
    let n = norm_checked(r)?;
    let r3 = n * n * n;
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..3).map(|k| levi_civita(k, i, j) * r[k]).sum::<f64>() / r3;
        }
    }
    Ok(out)
}

/// `T_lij = ∂_l ψ_ij = (δ_lk/r³ − 3x_l x_k/r⁵) ε_kij`.
pub fn coupling_gradient_t(r: Vec3) -> Result<Tensor3> {
    let n = norm_checked(r)?;
    let r2 = n * n;
    let r3 = r2 * n;
    let r5 = r3 * r2;
    let mut out = [[[0.0; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                out[l][i][j] = (0..3)
                    .map(|k| {
                        let delta = if l == k { 1.0 } else { 0.0 };
                        (delta / r3 - 3.0 * r[l] * r[k] / r5) * levi_civita(k, i, j)
                    })
                    .sum();
            }
        }
    }
    Ok(out)
}

/// `G_lq = 2(δ_lq/r⁶ + 3x_l x_q/r⁸)`.
pub fn g_tensor(r: Vec3) -> Result<Tensor2> {
    let n = norm_checked(r)?;
    let r2 = n * n;
    let r6 = r2 * r2 * r2;
    let r8 = r6 * r2;
    let mut out = [[0.0; 3]; 3];
    for (l, row) in out.iter_mut().enumerate() {
        for (q, v) in row.iter_mut().enumerate() {
            let delta = if l == q { 1.0 } else { 0.0 };
            *v = 2.0 * (delta / r6 + 3.0 * (r[l] * r[q]) / r8);
        }
    }
    Ok(out)
}

/// `G_lq = T_lij T_qij` by explicit contraction.
pub fn g_tensor_contracted(r: Vec3) -> Result<Tensor2> {
    let t = coupling_gradient_t(r)?;
    let mut out = [[0.0; 3]; 3];
    for l in 0..3 {
        for q in 0..3 {
            let mut s = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    s += t[l][i][j] * t[q][i][j];
                }
            }
            out[l][q] = s;
        }
    }
    Ok(out)
}

/// `G v`.
pub fn g_apply(g: &Tensor2, v: Vec3) -> Vec3 {
    Vec3::new(
        g[0][0] * v.x + g[0][1] * v.y + g[0][2] * v.z,
        g[1][0] * v.x + g[1][1] * v.y + g[1][2] * v.z,
        g[2][0] * v.x + g[2][1] * v.y + g[2][2] * v.z,
    )
}

/// `G_h = πρ/(2z0³)`.
pub fn g_halfspace(g: &PlaneGeometry) -> f64 {
    PI * g.rho / (2.0 * g.z0 * g.z0 * g.z0)
}

/// The integrand `ρ G_xx` of the half-space factor, at a point relative to
/// the particle.
pub fn g_halfspace_integrand(rho: f64, p: &Vec3) -> f64 {
    let r2 = p.norm_squared();
    let r6 = r2 * r2 * r2;
    rho * 2.0 * (1.0 + 3.0 * p.x * p.x / r2) / r6
}

/// Sampler for the half-space factor: heights `∝ z⁻⁴`, in-plane radius from
/// the `r⁻⁶` marginal.
pub fn g_halfspace_sampler(g: &PlaneGeometry) -> HalfSpaceSampler {
    HalfSpaceSampler::new(g.z0)
}

/// Monte-Carlo estimate of `ρ ∫_{z>z0} G_xx dV`.
pub fn g_halfspace_mc(g: &PlaneGeometry, cfg: McConfig) -> Result<McResult> {
    let rho = g.rho;
    mc_integrate(
        move |p: &Vec3| g_halfspace_integrand(rho, p),
        &g_halfspace_sampler(g),
        cfg,
    )
}

/// `G = πρ₁ρ₂/(4d²)`.
pub fn g_slabs_realspace(g: &SlabGeometry) -> f64 {
    PI * g.rho1 * g.rho2 / (4.0 * g.d * g.d)
}

/// `ρ₂ ∫_d^∞ G_h(z0) dz0` by quadrature.
pub fn g_slabs_realspace_quadrature(g: &SlabGeometry) -> Result<f64> {
    let rho1 = g.rho1;
    let f = |z0: f64| PI * rho1 / (2.0 * z0 * z0 * z0);
    let r = quad_semi_infinite_scaled(f, g.d, g.d, QuadOptions::with_tol(1e-15))?;
    Ok(g.rho2 * r.value)
}

/// `ψ̂(z0, q) = 2π e^{−q|z0|}/q`.
pub fn psi_hat(z0: f64, q: f64) -> Result<f64> {
    positive("q", q)?;
    Ok(2.0 * PI * libm::exp(-q * libm::fabs(z0)) / q)
}

/// `Ĝ(q) = (2π)² e^{−2qd}/q²`.
pub fn g_hat_q(d: f64, q: f64) -> Result<f64> {
    positive("d", d)?;
    positive("q", q)?;
    Ok(4.0 * PI * PI * libm::exp(-2.0 * q * d) / (q * q))
}

/// `∫_{z1>d} ∫_{z2<0} 4q² ψ̂(z1 − z2, q)² dz2 dz1` by nested quadrature.
pub fn g_hat_q_quadrature(d: f64, q: f64) -> Result<f64> {
    positive("d", d)?;
    positive("q", q)?;
    let opts = QuadOptions::with_tol(1e-14);
    let scale = 1.0 / q;
    let inner = |z1: f64| -> f64 {
        let f = |s: f64| {
            let p = psi_hat(z1 + s, q).unwrap_or(f64::NAN);
            4.0 * q * q * p * p
        };
        quad_semi_infinite_scaled(f, 0.0, scale, opts).map_or(f64::NAN, |r| r.value)
    };
    let r = quad_semi_infinite_scaled(inner, d, scale, opts)?;
    if !r.value.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            value: r.value,
            error_estimate: r.error_estimate,
            evaluations: r.evaluations,
        });
    }
    Ok(r.value)
}

/// `G = (ρ₁ρ₂/(2π)²) ∫₀^∞ ½q²Ĝ(q) 2πq dq`, evaluated in closed form from
/// `∫₀^∞ q e^{−2qd} dq = 1/(2d)²`.
pub fn g_slabs_fourier(g: &SlabGeometry) -> f64 {
    let moment = 1.0 / (4.0 * g.d * g.d);
    g.rho1 * g.rho2 / (4.0 * PI * PI) * 0.5 * 4.0 * PI * PI * 2.0 * PI * moment
}

/// The same q-integral by quadrature.
pub fn g_slabs_fourier_quadrature(g: &SlabGeometry) -> Result<f64> {
    let d = g.d;
    let f = |q: f64| {
        if q == 0.0 {
            return 0.0;
        }
        0.5 * q * q * g_hat_q(d, q).unwrap_or(f64::NAN) * 2.0 * PI * q
    };
    let r = quad_semi_infinite_scaled(f, 0.0, 0.5 / d, QuadOptions::with_tol(1e-15))?;
    Ok(g.rho1 * g.rho2 / (4.0 * PI * PI) * r.value)
}

/// `∫₀^{2π} cos⁶φ dφ = 5π/8`.
pub fn angular_moment6() -> f64 {
    5.0 * PI / 8.0
}

/// [`angular_moment6`] by quadrature.
pub fn angular_moment6_quadrature() -> Result<f64> {
    Ok(quad_finite_with(
        |p| libm::pow(libm::cos(p), 6.0),
        0.0,
        2.0 * PI,
        QuadOptions::with_tol(1e-15),
    )?
    .value)
}

/// [`angular_moment6`] from the Wallis product `2π·(5·3·1)/(6·4·2)`.
pub fn angular_moment6_wallis() -> f64 {
    2.0 * PI * (5.0 * 3.0) / (6.0 * 4.0 * 2.0)
}

/// `G_P = 75πρ₁ρ₂/(64d⁶)`.
pub fn g_p_slabs(g: &SlabGeometry) -> f64 {
    let d2 = g.d * g.d;
    75.0 * PI * g.rho1 * g.rho2 / (64.0 * d2 * d2 * d2)
}

/// `(ρ₁ρ₂/(2π)²) ∫₀^∞ (5/16) q⁶ Ĝ(q) 2πq dq` by quadrature.
pub fn g_p_slabs_quadrature(g: &SlabGeometry) -> Result<f64> {
    let d = g.d;
    let weight = angular_moment6_quadrature()? / (2.0 * PI);
    let f = |q: f64| {
        if q == 0.0 {
            return 0.0;
        }
        weight * libm::pow(q, 6.0) * g_hat_q(d, q).unwrap_or(f64::NAN) * 2.0 * PI * q
    };
    let r = quad_semi_infinite_scaled(f, 0.0, 3.0 / d, QuadOptions::with_tol(1e-15))?;
    Ok(g.rho1 * g.rho2 / (4.0 * PI * PI) * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::diff::gradient;
    use nalgebra::Matrix3;

    fn random_points() -> alloc::vec::Vec<Vec3> {
        // Deterministic spread of directions and radii.
        (0..40)
            .map(|i| {
                let a = 0.7 * i as f64 + 0.3;
                let b = 1.3 * i as f64 + 0.1;
                let r = 0.5 + 0.07 * i as f64;
                Vec3::new(
                    r * libm::sin(a) * libm::cos(b),
                    r * libm::sin(a) * libm::sin(b),
                    r * libm::cos(a),
                )
            })
            .collect()
    }

    #[test]
    fn psi_structure() {
        let z = 1.7;
        let p = coupling_psi(Vec3::new(0.0, 0.0, z)).unwrap();
        assert!((p[0][1] - 1.0 / (z * z)).abs() < 1e-15);
        assert!((p[1][0] + 1.0 / (z * z)).abs() < 1e-15);
        for r in random_points() {
            let p = coupling_psi(r).unwrap();
            for i in 0..3 {
                assert_eq!(p[i][i], 0.0);
                for j in 0..3 {
                    assert_eq!(p[i][j], -p[j][i]);
                }
            }
        }
        assert_eq!(coupling_psi(Vec3::ZERO), Err(Error::ZeroSeparation));
    }

    #[test]
    fn psi_equals_potential_gradient_form() {
        // ψ_ij = −∂_p(1/r) ε_pij, with ∂_p(1/r) = −x_p/r³ from the chain rule
        // on (x·x)^{−1/2}.
        for r in random_points() {
            let p = coupling_psi(r).unwrap();
            let inv = libm::pow(r.norm_squared(), -1.5);
            for i in 0..3 {
                for j in 0..3 {
                    let v: f64 = (0..3).map(|k| -(-r[k] * inv) * levi_civita(k, i, j)).sum();
                    assert!((p[i][j] - v).abs() <= 1e-12 * v.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for r in random_points() {
            let t = coupling_gradient_t(r).unwrap();
            let h = 1e-5 * r.norm();
            let flat = |x: [f64; 3]| -> [f64; 9] {
                let p = coupling_psi(Vec3::from_array(x)).unwrap();
                let mut o = [0.0; 9];
                for i in 0..3 {
                    for j in 0..3 {
                        o[3 * i + j] = p[i][j];
                    }
                }
                o
            };
            let fd = gradient(flat, r.to_array(), h);
            let scale = 1.0 / libm::pow(r.norm(), 3.0);
            for l in 0..3 {
                for i in 0..3 {
                    assert_eq!(t[l][i][i], 0.0);
                    for j in 0..3 {
                        assert!(
                            (fd[l][3 * i + j] - t[l][i][j]).abs() < 1e-8 * scale,
                            "r = {r:?}"
                        );
                    }
                }
            }
            let t2 = coupling_gradient_t(r.scale(2.0)).unwrap();
            assert!((t2[0][1][2] - t[0][1][2] / 8.0).abs() < 1e-15 * scale);
        }
    }

    #[test]
    fn g_closed_form_and_contraction() {
        let g = g_tensor(Vec3::Z).unwrap();
        assert_eq!(g[0][0], 2.0);
        assert_eq!(g[2][2], 8.0);
        assert_eq!(g[0][1], 0.0);
        for r in random_points() {
            let a = g_tensor(r).unwrap();
            let b = g_tensor_contracted(r).unwrap();
            for l in 0..3 {
                for q in 0..3 {
                    assert!((a[l][q] - b[l][q]).abs() <= 1e-12 * a[l][l].abs());
                }
            }
            let m = Matrix3::from_fn(|i, j| a[i][j]);
            let ev = m.symmetric_eigen().eigenvalues;
            assert!(ev.iter().all(|&e| e > 0.0));
        }
    }

    #[test]
    fn halfspace_closed_form() {
        let g = PlaneGeometry::new(2.0, 1.0).unwrap();
        assert!((g_halfspace(&g) - PI / 16.0).abs() < 1e-15);
        assert!((g_halfspace(&g) - 0.19635).abs() < 1e-5);
        let g2 = PlaneGeometry::new(4.0, 1.0).unwrap();
        assert!((g_halfspace(&g2) - g_halfspace(&g) / 8.0).abs() < 1e-16);
        assert!(PlaneGeometry::new(0.0, 1.0).is_err());
    }

    #[test]
    fn halfspace_monte_carlo() {
        let g = PlaneGeometry::new(1.5, 2.0).unwrap();
        let r = g_halfspace_mc(&g, McConfig::new(400_000, 3).with_partitions(4)).unwrap();
        let exact = g_halfspace(&g);
        assert!(
            (r.value - exact).abs() < 3.0 * r.std_error,
            "{} ± {} vs {exact}",
            r.value,
            r.std_error
        );
        assert!(r.std_error / exact < 1e-2);
    }

    #[test]
    fn slab_factors() {
        let g = SlabGeometry::new(1.0, 1.0, 1.0).unwrap();
        assert!((g_slabs_realspace(&g) - PI / 4.0).abs() < 1e-15);
        assert!((g_slabs_fourier(&g) - PI / 4.0).abs() < 1e-15);
        for &(d, r1, r2) in &[(1.0, 1.0, 1.0), (0.3, 2.0, 0.5), (4.0, 0.1, 7.0)] {
            let g = SlabGeometry::new(d, r1, r2).unwrap();
            let exact = g_slabs_realspace(&g);
            assert!((g_slabs_realspace_quadrature(&g).unwrap() / exact - 1.0).abs() < 1e-10);
            assert!((g_slabs_fourier_quadrature(&g).unwrap() / exact - 1.0).abs() < 1e-10);
            assert!((g_slabs_fourier(&g) / exact - 1.0).abs() < 1e-14);
            let gp = g_p_slabs(&g);
            assert!((g_p_slabs_quadrature(&g).unwrap() / gp - 1.0).abs() < 1e-10);
        }
        assert!((g_p_slabs(&g) - 75.0 * PI / 64.0).abs() < 1e-14);
        assert!((g_p_slabs(&g) - 3.68155).abs() < 1e-5);
        let g2 = SlabGeometry::new(2.0, 1.0, 1.0).unwrap();
        assert!((g_p_slabs(&g2) * 64.0 - g_p_slabs(&g)).abs() < 1e-14);
    }

    #[test]
    fn fourier_pieces() {
        assert!((psi_hat(0.0, 2.0).unwrap() - PI).abs() < 1e-15);
        assert!(psi_hat(100.0, 10.0).unwrap() < 1e-300);
        assert!(psi_hat(1.0, 0.0).is_err());
        for &(d, q) in &[(1.0, 0.5), (0.2, 3.0), (2.0, 1.0)] {
            let exact = g_hat_q(d, q).unwrap();
            let quad = g_hat_q_quadrature(d, q).unwrap();
            assert!(
                (quad / exact - 1.0).abs() < 1e-10,
                "d {d} q {q}: {quad} vs {exact}"
            );
            let doubled = g_hat_q(2.0 * d, q).unwrap();
            assert!((doubled / (exact * libm::exp(-2.0 * q * d)) - 1.0).abs() < 1e-14);
        }
        // ⟨k_x²⟩ = q²/2: ∫ cos²φ dφ = π.
        let c2 = quad_finite_with(
            |p| libm::cos(p) * libm::cos(p),
            0.0,
            2.0 * PI,
            QuadOptions::with_tol(1e-15),
        )
        .unwrap()
        .value;
        assert!((c2 - PI).abs() < 1e-13);
    }

    #[test]
    fn psi_hat_inverse_transform() {
        // (1/2π) ∫ ψ̂ J₀(qρ) q dq = ∫₀^∞ e^{−qz} J₀(qρ) dq = 1/√(z² + ρ²).
        fn j0(x: f64) -> f64 {
            // J₀(x) = (1/π)∫₀^π cos(x sin θ) dθ; the periodic trapezoid rule
            // converges geometrically.
            let n = 64;
            (0..n)
                .map(|k| libm::cos(x * libm::sin(PI * (k as f64 + 0.5) / n as f64)))
                .sum::<f64>()
                / n as f64
        }
        for &(z, rho) in &[(1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (2.0, 1.5)] {
            let f = |q: f64| {
                if q == 0.0 {
                    return 0.0;
                }
                psi_hat(z, q).unwrap() * j0(q * rho) * q / (2.0 * PI)
            };
            let v = quad_semi_infinite_scaled(f, 0.0, 1.0 / z, QuadOptions::with_tol(1e-12))
                .unwrap()
                .value;
            let exact = 1.0 / libm::hypot(z, rho);
            assert!(
                (v - exact).abs() < 1e-4 * exact,
                "z {z} rho {rho}: {v} vs {exact}"
            );
        }
    }

    #[test]
    fn angular_moment_routes() {
        let a = angular_moment6();
        assert!((a - 1.963495).abs() < 1e-6);
        assert!((angular_moment6_quadrature().unwrap() - a).abs() < 1e-12);
        assert!((angular_moment6_wallis() - a).abs() < 1e-15);
    }
}
