//! Oracle batteries behind `verify --suite`.

use std::f64::consts::PI;

use casimir_friction::dipole_fields::{magnetic_field_full, magnetic_field_quasistatic, magnetic_field_quasistatic_fourier};
use casimir_friction::friction_forces::{finite_t_slab_force, zero_t_slab_force};
use casimir_friction::geometry_coupling::{
    g_halfspace, g_halfspace_integrand, g_halfspace_sampler, g_p_slabs, g_p_slabs_quadrature, g_slabs_fourier_quadrature,
    g_slabs_realspace, g_slabs_realspace_quadrature, g_tensor, g_tensor_contracted, PlaneGeometry, SlabGeometry,
};
use casimir_friction::materials_spectral::{
    drude_d, drude_h_complex, drude_spectrum, smoothed_h0_quadrature, spectrum_from_h, universal_i_quadrature, universal_i_series,
    DrudeParams, SpectralAmplitude, SpectralDensity, DEFAULT_GAMMA_LADDER,
};
use casimir_friction::matsubara::{induced_free_energy, MatsubaraGrid};
use casimir_friction::numerics::{quad_semi_infinite_scaled, McConfig, QuadOptions};
use casimir_friction::oscillator_pair::{eigenfrequencies, integrate_eom_strided, OscPairConfig};
use casimir_friction::response_kinetics::{
    c_plus_minus, dissipation_j, dissipation_j_linear, h_p, m_full, m_full_from_kernels, m_reduced, m_remainder, nascent_delta_g, response_d, response_phi,
    OscState,
};
use casimir_friction::materials_spectral::thermal_h;
use casimir_friction::units::UnitContext;
use casimir_friction::{Complex64, Vec3};

use crate::error::{CliError, CliResult};
use crate::parallel::mc_integrate_parallel;
use crate::table::Row;

pub const SUITES: &[&str] = &["fields", "oscillator", "matsubara", "response", "spectral", "geometry", "friction"];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub value: f64,
    pub reference: f64,
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }

    pub fn row(&self) -> Row {
        let mut r = Row::default();
        r.text("suite", self.suite)
            .text("check", self.name)
            .num("value", self.value, None)
            .num("reference", self.reference, None)
            .num("error", self.error, None)
            .num("tolerance", self.tolerance, None)
            .text("status", if self.passed() { "PASS" } else { "FAIL" });
        r
    }
}

struct Battery {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Battery {
    fn new(suite: &'static str) -> Self {
        Self { suite, checks: Vec::new() }
    }

    fn abs(&mut self, name: &'static str, value: f64, reference: f64, tolerance: f64) {
        let error = (value - reference).abs();
        self.checks.push(Check {
            suite: self.suite,
            name,
            value,
            reference,
            error: if error.is_nan() { f64::INFINITY } else { error },
            tolerance,
        });
    }

    fn rel(&mut self, name: &'static str, value: f64, reference: f64, tolerance: f64) {
        let error = ((value - reference) / reference).abs();
        self.checks.push(Check {
            suite: self.suite,
            name,
            value,
            reference,
            error: if error.is_nan() { f64::INFINITY } else { error },
            tolerance,
        });
    }

    /// Records a boolean property as error 0 (holds) or 1 (violated).
    fn holds(&mut self, name: &'static str, ok: bool) {
        self.abs(name, f64::from(u8::from(ok)), 1.0, 0.0);
    }
}

/// Options shared by the batteries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> CliResult<Vec<Check>> {
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut out = Vec::new();
    for n in names {
        let battery = match n {
            "fields" => fields()?,
            "oscillator" => oscillator()?,
            "matsubara" => matsubara()?,
            "response" => response()?,
            "spectral" => spectral()?,
            "geometry" => geometry(opts)?,
            "friction" => friction()?,
            other => {
                return Err(CliError::Config(format!(
                    "unknown suite '{other}' (expected all, {})",
                    SUITES.join(", ")
                )))
            }
        };
        out.extend(battery.checks);
    }
    Ok(out)
}

fn fields() -> CliResult<Battery> {
    let mut b = Battery::new("fields");
    let h = magnetic_field_quasistatic(Vec3::X, Vec3::Z)?;
    b.abs("biot_savart_example_y", h.y, -1.0, 0.0);
    let p = Vec3::new(0.3, -1.1, 0.7);
    let r = Vec3::new(0.4, 0.9, -1.3);
    let mut worst: f64 = 0.0;
    for k in 0..=8 {
        let zr = 10f64.powf(-4.0 + 0.25 * f64::from(k));
        let zeta = Complex64::new(0.0, zr / r.norm());
        let full = magnetic_field_full(p, zeta, r)?;
        let qs = magnetic_field_quasistatic_fourier(p, zeta, r)?;
        worst = worst.max(full.sub(qs).norm() / qs.norm() / zr);
    }
    b.abs("quasistatic_deviation_over_zeta_r", worst, 0.0, 1.0);
    let rate = Vec3::new(0.2, 0.5, -0.9);
    let f = magnetic_field_quasistatic(rate, r)?;
    b.abs("field_orthogonal_to_separation", f.dot(r) / (f.norm() * r.norm()), 0.0, 1e-15);
    Ok(b)
}

fn oscillator() -> CliResult<Battery> {
    let mut b = Battery::new("oscillator");
    for alpha in [0.0, 0.3, 1.0, 4.9] {
        let (hi, lo) = eigenfrequencies(alpha)?;
        b.abs("closed_form_product", hi * lo, 1.0, 1e-15);
    }
    let cfg = OscPairConfig::symmetric(0.75)?;
    let t = integrate_eom_strided(&cfg, [1.0, 0.0, 0.0, 0.0], 200.0, 1e-3, 100)?;
    let fit = t.fit_x(2)?;
    b.abs("fitted_omega_plus", fit.components[0].frequency, 2.0, 1e-6);
    b.abs("fitted_omega_minus", fit.components[1].frequency, 0.5, 1e-6);
    b.abs("energy_drift", t.max_relative_drift, 0.0, 1e-8);
    Ok(b)
}

fn matsubara() -> CliResult<Battery> {
    let mut b = Battery::new("matsubara");
    let f = induced_free_energy(0.1, &MatsubaraGrid::auto(1000.0, 1e-12)?)?;
    b.rel("zero_temperature_limit", f, 0.005, 1e-4);
    let f = induced_free_energy(0.1, &MatsubaraGrid::auto(1e-6, 1e-20)?)?;
    b.abs("classical_limit", f, 0.0, 1e-6 * 0.01);
    // Σ over ℤ in closed form.
    let (alpha, beta): (f64, f64) = (0.7, 2.0);
    let x = beta / 2.0;
    let exact = 0.5 * alpha * alpha * (1.0 / x.tanh() - x / x.sinh().powi(2));
    let f = induced_free_energy(alpha, &MatsubaraGrid::auto_for(alpha, beta, 1e-14)?)?;
    b.abs("closed_form_beta_2", f, exact, 1e-13);
    Ok(b)
}

fn response() -> CliResult<Battery> {
    let mut b = Battery::new("response");
    let beta = 1.3;
    let (w1, w2, a1, a2) = (1.1, 0.6, 0.8, 2.5);
    let o1 = OscState::thermal_polarizable(w1, a1, beta)?;
    let o2 = OscState::thermal_polarizable(w2, a2, beta)?;
    let worst = (0..100)
        .map(|i| {
            let t = 0.1 * f64::from(i);
            (m_full(&o1, &o2, t) - m_full_from_kernels(&o1, &o2, t)).norm()
        })
        .fold(0.0, f64::max);
    b.abs("kernel_product_form", worst, 0.0, 1e-12);
    let bound = 0.5 * (w1 - w2) * (w1 - w2) * (o1.occupation_factor() + o2.occupation_factor());
    let (mut excess, mut worst): (f64, f64) = (0.0, 0.0);
    for i in 0..1000 {
        let t = 0.0137 * f64::from(i);
        let diff = m_full(&o1, &o2, t) - m_reduced(&o1, &o2, t);
        worst = worst.max((diff - m_remainder(&o1, &o2, t)).norm());
        excess = excess.max(diff.norm() - bound);
    }
    b.abs("remainder_identity", worst, 0.0, 1e-12);
    b.holds("remainder_bound", excess <= 1e-12);
    let c = c_plus_minus(&o1, &o2, beta, thermal_h(w1, w2, a1, a2, beta)?);
    let d = response_d(&o1, &o2);
    let worst = (0..100)
        .map(|i| {
            let t = 0.1 * f64::from(i);
            (response_phi(&o1, &o2, t, d).re - c.eval(t)).abs()
        })
        .fold(0.0, f64::max);
    b.abs("two_sinusoid_form", worst, 0.0, 1e-10);
    for eta in [1.0, 0.1, 0.01] {
        let v = 2.0
            * quad_semi_infinite_scaled(|w| w * nascent_delta_g(w, eta).unwrap_or(f64::NAN), 0.0, eta, QuadOptions::with_tol(1e-13))?
                .value;
        b.abs("delta_normalization", v, PI, 1e-8);
    }
    Ok(b)
}

fn spectral() -> CliResult<Battery> {
    let mut b = Battery::new("spectral");
    let exact = 4.0 * PI.powi(4) / 15.0;
    b.abs("universal_integral_series", universal_i_series()?, exact, 1e-10);
    b.abs("universal_integral_quadrature", universal_i_quadrature()?, exact, 1e-10);
    let p = DrudeParams::new(2.0, 0.05, 1.0)?;
    let h = move |k2: Complex64| drude_h_complex(&p, k2);
    let m = 0.01;
    let s = spectrum_from_h(&h, m, &DEFAULT_GAMMA_LADDER)?;
    b.rel("drude_slope_extracted", s / m, drude_d(&p).d, 1e-2);
    b.rel("drude_slope_density", drude_spectrum(p).density(m)? / m, drude_d(&p).d, 1e-2);
    let amp = SpectralAmplitude::new(0.7)?;
    let lin = SpectralDensity::linear(amp);
    b.rel(
        "dissipation_quadrature",
        dissipation_j(1.3, 2.0, &lin, &lin)?,
        dissipation_j_linear(1.3, 2.0, amp, amp)?,
        1e-10,
    );
    Ok(b)
}

fn geometry(opts: &VerifyOptions) -> CliResult<Battery> {
    let mut b = Battery::new("geometry");
    let plane = PlaneGeometry::new(1.0, 1.0)?;
    let cfg = McConfig::new(opts.samples, opts.seed).with_partitions(64);
    let f = |p: &Vec3| g_halfspace_integrand(1.0, p);
    let mc = mc_integrate_parallel(f, &g_halfspace_sampler(&plane), cfg, opts.workers)?;
    let exact = g_halfspace(&plane);
    b.rel("halfspace_mc", mc.value, exact, 1e-2);
    b.abs("halfspace_mc_sigma", (mc.value - exact).abs() / mc.std_error, 0.0, 3.0);
    let g = SlabGeometry::new(1.0, 1.0, 1.0)?;
    b.rel("slab_factor_quadrature", g_slabs_realspace_quadrature(&g)?, g_slabs_realspace(&g), 1e-9);
    b.rel("slab_factor_fourier", g_slabs_fourier_quadrature(&g)?, g_slabs_realspace(&g), 1e-10);
    b.rel("zero_t_factor_quadrature", g_p_slabs_quadrature(&g)?, g_p_slabs(&g), 1e-9);
    let r = Vec3::new(0.3, -0.4, 1.2);
    let (a, c) = (g_tensor(r)?, g_tensor_contracted(r)?);
    b.rel("g_tensor_contraction", c[0][2], a[0][2], 1e-12);
    Ok(b)
}

fn friction() -> CliResult<Battery> {
    let mut b = Battery::new("friction");
    let u = UnitContext::reduced();
    let g = SlabGeometry::new(1.0, 1.0, 1.0)?;
    let one = SpectralAmplitude::new(1.0)?;
    let f = finite_t_slab_force(&g, 1e-3, one, one, 1.0, &u)?;
    let force = f.scalar_force().unwrap_or(f64::NAN);
    b.rel("finite_t_example", force, -2.0 * PI.powi(6) / 15.0 * 1e-3, 1e-12);
    let lin = SpectralDensity::linear(one);
    let h0 = smoothed_h0_quadrature(&lin, &lin, 1.0)?;
    b.rel("finite_t_quadrature_assembly", force, -g_slabs_realspace_quadrature(&g)? * 1e-3 * h0, 1e-9);
    let z = zero_t_slab_force(&g, 0.01, one, one, &u)?;
    b.rel("zero_t_example", z.scalar_force().unwrap_or(f64::NAN), -5.0 * PI * PI / 512.0 * 1e-4 * 1e-6, 1e-12);
    b.rel("h_p_closed_form", h_p(one, one), PI / 120.0, 1e-15);
    b.holds("braking_sign", force < 0.0 && z.scalar_force().is_some_and(|x| x < 0.0));
    let gauss = UnitContext::gaussian(1e-5)?;
    b.holds("physical_units_audit", finite_t_slab_force(&g, 1e-3, one, one, 1.0, &gauss).is_ok());
    Ok(b)
}
