//! Assembled friction forces and their conversion to Gaussian units.
//!
//! Every assembly works in reduced units and returns a [`FrictionReport`]
//! carrying the force together with each factor of the assembly chain.
//! A negative force (or δ-amplitude) opposes a positive velocity.

use alloc::collections::BTreeMap;
use core::f64::consts::PI;

use crate::error::{require_positive as positive, Error, Result};
use crate::geometry_coupling::{
    g_apply, g_halfspace, g_p_slabs, g_slabs_realspace, g_tensor, PairGeometry, PlaneGeometry,
    SlabGeometry,
};
use crate::materials_spectral::{
    smoothed_h0, smoothed_h0_linear, thermal_h, SpectralAmplitude, SpectralDensity, UNIVERSAL_I,
};
use crate::response_kinetics::{h_p, DeltaCoefficient, OscState};
use crate::units::{Dims, Quantity, UnitContext};
use crate::Vec3;

const G_PAIR: Dims = Dims::new(-8, 2, 0);
const G_SLABS: Dims = Dims::new(-10, 2, 0);
const G_P: Dims = Dims::new(-14, 2, 0);
const H0: Dims = Dims::new(6, -1, 1);
const H_P: Dims = Dims::new(6, 3, 1);
const H_SHARP: Dims = Dims::new(6, 0, 2);

/// Relative tolerance of the internal assembly cross-checks.
const ASSEMBLY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    PairSharp,
    PairSmoothed,
    Plane,
    SlabsFiniteT,
    SlabsZeroT,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::PairSharp => "pair-sharp",
            Regime::PairSmoothed => "pair-smoothed",
            Regime::Plane => "plane",
            Regime::SlabsFiniteT => "slabs-finite-T",
            Regime::SlabsZeroT => "slabs-zero-T",
        }
    }

    /// Dimensions of the force: per unit area for slabs.
    pub fn force_dims(self) -> Dims {
        match self {
            Regime::SlabsFiniteT | Regime::SlabsZeroT => Dims::FORCE_PER_AREA,
            _ => Dims::FORCE,
        }
    }

    fn g_name(self) -> &'static str {
        match self {
            Regime::PairSharp | Regime::PairSmoothed => "G_vv",
            Regime::Plane => "G_h",
            Regime::SlabsFiniteT => "G",
            Regime::SlabsZeroT => "G_P",
        }
    }

    fn g_dims(self) -> Dims {
        match self {
            Regime::PairSharp | Regime::PairSmoothed | Regime::Plane => G_PAIR,
            Regime::SlabsFiniteT => G_SLABS,
            Regime::SlabsZeroT => G_P,
        }
    }
}

/// The δ(ω₁ − ω₂) coefficient of each force component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaVector {
    pub amplitude: Vec3,
    pub at_frequency: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForceValue {
    Scalar(f64),
    Vector(Vec3),
    Delta(DeltaCoefficient),
    DeltaVector(DeltaVector),
}

impl ForceValue {
    fn scaled(self, force: f64, frequency: f64) -> Self {
        match self {
            ForceValue::Scalar(f) => ForceValue::Scalar(f * force),
            ForceValue::Vector(f) => ForceValue::Vector(f.scale(force)),
            ForceValue::Delta(d) => ForceValue::Delta(DeltaCoefficient {
                amplitude: d.amplitude * force * frequency,
                at_frequency: d.at_frequency * frequency,
            }),
            ForceValue::DeltaVector(d) => ForceValue::DeltaVector(DeltaVector {
                amplitude: d.amplitude.scale(force * frequency),
                at_frequency: d.at_frequency * frequency,
            }),
        }
    }

    /// Projection on the velocity direction (for δ forms, of the
    /// amplitude).
    pub fn along(&self, v: Vec3) -> f64 {
        let n = v.norm();
        match *self {
            ForceValue::Scalar(f) => f * v.x.signum(),
            ForceValue::Vector(f) => {
                if n == 0.0 {
                    0.0
                } else {
                    f.dot(v) / n
                }
            }
            ForceValue::Delta(d) => d.amplitude * v.x.signum(),
            ForceValue::DeltaVector(d) => {
                if n == 0.0 {
                    0.0
                } else {
                    d.amplitude.dot(v) / n
                }
            }
        }
    }
}

/// Unit system of the numbers held by a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitSystem {
    Reduced,
    Physical(UnitContext),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrictionReport {
    pub regime: Regime,
    pub force: ForceValue,
    pub intermediates: BTreeMap<&'static str, Quantity>,
    pub inputs: BTreeMap<&'static str, Quantity>,
    pub system: UnitSystem,
}

impl FrictionReport {
    fn new(regime: Regime, force: ForceValue) -> Self {
        Self {
            regime,
            force,
            intermediates: BTreeMap::new(),
            inputs: BTreeMap::new(),
            system: UnitSystem::Reduced,
        }
    }

    fn input(mut self, name: &'static str, value: f64, dims: Dims) -> Self {
        self.inputs.insert(name, Quantity::new(value, dims));
        self
    }

    fn factor(mut self, name: &'static str, value: f64, dims: Dims) -> Self {
        self.intermediates.insert(name, Quantity::new(value, dims));
        self
    }

    pub fn intermediate(&self, name: &str) -> Option<f64> {
        self.intermediates.get(name).map(|q| q.value)
    }

    /// The force for scalar-valued regimes.
    pub fn scalar_force(&self) -> Option<f64> {
        match self.force {
            ForceValue::Scalar(f) => Some(f),
            _ => None,
        }
    }
}

fn finite(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(name, v, "must be finite"))
    }
}

fn check(what: &'static str, a: f64, b: f64) -> Result<()> {
    let diff = libm::fabs(a - b);
    if diff <= ASSEMBLY_TOL * libm::fabs(b).max(libm::fabs(a)) || diff == 0.0 {
        Ok(())
    } else {
        Err(Error::Consistency {
            what,
            difference: diff,
        })
    }
}

/// Normalises `−0.0` to `0.0`.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn sharp_h(osc1: &OscState, osc2: &OscState, beta: f64) -> Result<f64> {
    // On the δ support ω₂ = ω₁, so α₂ = 1/(m₂ω₁²).
    let w = osc1.omega;
    thermal_h(w, w, osc1.polarizability(), 1.0 / (osc2.mass * w * w), beta)
}

fn osc_inputs(
    report: FrictionReport,
    osc1: &OscState,
    osc2: &OscState,
    beta: f64,
) -> FrictionReport {
    report
        .input("omega1", osc1.omega, Dims::FREQUENCY)
        .input("omega2", osc2.omega, Dims::FREQUENCY)
        .input("alpha1", osc1.polarizability(), Dims::POLARIZABILITY)
        .input(
            "alpha2",
            1.0 / (osc2.mass * osc1.omega * osc1.omega),
            Dims::POLARIZABILITY,
        )
        .input("beta", beta, Dims::INVERSE_ENERGY)
}

/// `F_l = −G_lq v_q H (πβω₁²/2) δ(ω₁ − ω₂)` for two sharp oscillators,
/// returned as the per-component δ coefficient.
pub fn pair_force_sharp(
    geom: &PairGeometry,
    v: Vec3,
    osc1: &OscState,
    osc2: &OscState,
    beta: f64,
) -> Result<FrictionReport> {
    positive("beta", beta)?;
    if !v.is_finite() {
        return Err(Error::domain("v", f64::NAN, "must be finite"));
    }
    let g = g_tensor(geom.r)?;
    let h = sharp_h(osc1, osc2, beta)?;
    let w = osc1.omega;
    let k = h * PI * beta * w * w / 2.0;
    let gv = g_apply(&g, v);
    let amp = gv.scale(-k);
    let amplitude = Vec3::new(clean(amp.x), clean(amp.y), clean(amp.z));
    let vn = v.norm();
    let g_vv = if vn == 0.0 {
        0.0
    } else {
        gv.dot(v) / (vn * vn)
    };
    let mut report = FrictionReport::new(
        Regime::PairSharp,
        ForceValue::DeltaVector(DeltaVector {
            amplitude,
            at_frequency: w,
        }),
    )
    .factor("H", h, H_SHARP)
    .factor("G_vv", g_vv, G_PAIR)
    .factor("delta_weight", k, Dims::new(6, -2, 1));
    for (name, l, q) in [
        ("G_xx", 0, 0),
        ("G_xy", 0, 1),
        ("G_xz", 0, 2),
        ("G_yy", 1, 1),
        ("G_yz", 1, 2),
        ("G_zz", 2, 2),
    ] {
        report = report.factor(name, g[l][q], G_PAIR);
    }
    report = report
        .input("r_x", geom.r.x, Dims::LENGTH)
        .input("r_y", geom.r.y, Dims::LENGTH)
        .input("r_z", geom.r.z, Dims::LENGTH)
        .input("v_x", v.x, Dims::VELOCITY)
        .input("v_y", v.y, Dims::VELOCITY)
        .input("v_z", v.z, Dims::VELOCITY);
    Ok(osc_inputs(report, osc1, osc2, beta))
}

/// `F = −G·v·H₀` with a precomputed geometric factor.
pub fn smoothed_forces(g_factor: f64, v: f64, h0: f64, regime: Regime) -> Result<FrictionReport> {
    finite(regime.g_name(), g_factor)?;
    finite("v", v)?;
    finite("H0", h0)?;
    Ok(
        FrictionReport::new(regime, ForceValue::Scalar(clean(-g_factor * v * h0)))
            .factor(regime.g_name(), g_factor, regime.g_dims())
            .factor("H0", h0, H0)
            .input("v", v, Dims::VELOCITY),
    )
}

/// Smoothed force on a particle moving with velocity `v` past another,
/// `F = −G v H₀`.
pub fn pair_force_smoothed(
    geom: &PairGeometry,
    v: Vec3,
    spec1: &SpectralDensity,
    spec2: &SpectralDensity,
    beta: f64,
) -> Result<FrictionReport> {
    if !v.is_finite() {
        return Err(Error::domain("v", f64::NAN, "must be finite"));
    }
    let g = g_tensor(geom.r)?;
    let h0 = smoothed_h0(spec1, spec2, beta)?;
    let f = g_apply(&g, v).scale(-h0);
    let vn = v.norm();
    let g_vv = if vn == 0.0 {
        0.0
    } else {
        g_apply(&g, v).dot(v) / (vn * vn)
    };
    Ok(FrictionReport::new(
        Regime::PairSmoothed,
        ForceValue::Vector(Vec3::new(clean(f.x), clean(f.y), clean(f.z))),
    )
    .factor("G_vv", g_vv, G_PAIR)
    .factor("H0", h0, H0)
    .input("r_x", geom.r.x, Dims::LENGTH)
    .input("r_y", geom.r.y, Dims::LENGTH)
    .input("r_z", geom.r.z, Dims::LENGTH)
    .input("v_x", v.x, Dims::VELOCITY)
    .input("v_y", v.y, Dims::VELOCITY)
    .input("v_z", v.z, Dims::VELOCITY)
    .input("beta", beta, Dims::INVERSE_ENERGY))
}

/// Particle moving parallel to a half-space: `F_h = −G_h v H₀`.
pub fn plane_force(
    g: &PlaneGeometry,
    v: f64,
    spec1: &SpectralDensity,
    spec2: &SpectralDensity,
    beta: f64,
) -> Result<FrictionReport> {
    let gh = g_halfspace(g);
    let h0 = smoothed_h0(spec1, spec2, beta)?;
    let mut report = smoothed_forces(gh, v, h0, Regime::Plane)?;
    report = report
        .input("z0", g.z0, Dims::LENGTH)
        .input("rho", g.rho, Dims::NUMBER_DENSITY)
        .input("beta", beta, Dims::INVERSE_ENERGY);
    Ok(report)
}

/// Sharp-oscillator form of the half-space force,
/// `F_h = −G_h v H (πβω₁²/2) δ(ω₁ − ω₂)`.
pub fn plane_force_sharp(
    g: &PlaneGeometry,
    v: f64,
    osc1: &OscState,
    osc2: &OscState,
    beta: f64,
) -> Result<FrictionReport> {
    positive("beta", beta)?;
    finite("v", v)?;
    let gh = g_halfspace(g);
    let h = sharp_h(osc1, osc2, beta)?;
    let w = osc1.omega;
    let k = h * PI * beta * w * w / 2.0;
    let report = FrictionReport::new(
        Regime::Plane,
        ForceValue::Delta(DeltaCoefficient {
            amplitude: clean(-gh * v * k),
            at_frequency: w,
        }),
    )
    .factor("G_h", gh, G_PAIR)
    .factor("H", h, H_SHARP)
    .factor("delta_weight", k, Dims::new(6, -2, 1))
    .input("z0", g.z0, Dims::LENGTH)
    .input("rho", g.rho, Dims::NUMBER_DENSITY)
    .input("v", v, Dims::VELOCITY);
    Ok(osc_inputs(report, osc1, osc2, beta))
}

/// `−(2π⁶/15)(d/(βcħ))² ρ₁ρ₂D₁D₂ħv/(β²d⁴)` with explicit `ħ` and `c`.
pub fn finite_t_closed_form(
    g: &SlabGeometry,
    v: f64,
    d1: f64,
    d2: f64,
    beta: f64,
    hbar: f64,
    c: f64,
) -> f64 {
    let s = g.d / (beta * c * hbar);
    let d4 = g.d * g.d * g.d * g.d;
    -(2.0 * libm::pow(PI, 6.0) / 15.0) * s * s * g.rho1 * g.rho2 * d1 * d2 * hbar * v
        / (beta * beta * d4)
}

/// `−(5π²/(512d⁶))(v/c)² ρ₁ρ₂D₁D₂(ħv)³` with explicit `ħ` and `c`.
pub fn zero_t_closed_form(g: &SlabGeometry, v: f64, d1: f64, d2: f64, hbar: f64, c: f64) -> f64 {
    let d6 = libm::pow(g.d, 6.0);
    let s = v / c;
    let hv = hbar * v;
    -(5.0 * PI * PI / (512.0 * d6)) * s * s * g.rho1 * g.rho2 * d1 * d2 * hv * hv * hv
}

fn slab_inputs(
    report: FrictionReport,
    g: &SlabGeometry,
    v: f64,
    d1: SpectralAmplitude,
    d2: SpectralAmplitude,
) -> FrictionReport {
    report
        .input("d", g.d, Dims::LENGTH)
        .input("rho1", g.rho1, Dims::NUMBER_DENSITY)
        .input("rho2", g.rho2, Dims::NUMBER_DENSITY)
        .input("D1", d1.d, Dims::SPECTRAL_SLOPE)
        .input("D2", d2.d, Dims::SPECTRAL_SLOPE)
        .input("v", v, Dims::VELOCITY)
}

/// Converts reduced inputs with `units`, evaluates `closed` with the
/// context's `ħ` and `c`, and compares with the converted reduced force.
fn physical_audit(
    what: &'static str,
    units: &UnitContext,
    reduced_force: f64,
    closed: impl Fn(&SlabGeometry, f64, f64, f64, f64) -> f64,
    g: &SlabGeometry,
    v: f64,
    d1: f64,
    d2: f64,
    beta: f64,
) -> Result<()> {
    if units.is_identity() {
        return Ok(());
    }
    let p = |x: f64, dims: Dims| units.factor(dims) * x;
    let gp = SlabGeometry {
        d: p(g.d, Dims::LENGTH),
        rho1: p(g.rho1, Dims::NUMBER_DENSITY),
        rho2: p(g.rho2, Dims::NUMBER_DENSITY),
    };
    let physical = closed(
        &gp,
        p(v, Dims::VELOCITY),
        p(d1, Dims::SPECTRAL_SLOPE),
        p(d2, Dims::SPECTRAL_SLOPE),
        p(beta, Dims::INVERSE_ENERGY),
    );
    let converted = p(reduced_force, Dims::FORCE_PER_AREA);
    let diff = libm::fabs(physical - converted);
    if diff <= 1e-10 * libm::fabs(physical) || diff == 0.0 {
        Ok(())
    } else {
        Err(Error::Consistency {
            what,
            difference: diff,
        })
    }
}

/// Force per unit area between two Drude half-spaces at finite temperature,
/// assembled as `−G v H₀` and checked against the closed form.
///
/// The report exposes `suppression_factor = (d/(βcħ))²` and the
/// dielectric-form reference with that factor removed.
pub fn finite_t_slab_force(
    g: &SlabGeometry,
    v: f64,
    d1: SpectralAmplitude,
    d2: SpectralAmplitude,
    beta: f64,
    units: &UnitContext,
) -> Result<FrictionReport> {
    positive("beta", beta)?;
    finite("v", v)?;
    let gs = g_slabs_realspace(g);
    let h0 = smoothed_h0_linear(d1, d2, beta)?;
    let report = smoothed_forces(gs, v, h0, Regime::SlabsFiniteT)?;
    let force = report.scalar_force().unwrap_or(f64::NAN);
    let closed = finite_t_closed_form(g, v, d1.d, d2.d, beta, 1.0, 1.0);
    check("finite-temperature slab force assembly", force, closed)?;
    physical_audit(
        "finite-temperature slab force in physical units",
        units,
        force,
        |g, v, a, b, beta| finite_t_closed_form(g, v, a, b, beta, units.hbar, units.c),
        g,
        v,
        d1.d,
        d2.d,
        beta,
    )?;
    let s = g.d / beta;
    let d4 = g.d * g.d * g.d * g.d;
    let dielectric =
        -(2.0 * libm::pow(PI, 6.0) / 15.0) * g.rho1 * g.rho2 * d1.d * d2.d * v / (beta * beta * d4);
    let report = report
        .factor("I", UNIVERSAL_I, Dims::DIMENSIONLESS)
        .factor("suppression_factor", s * s, Dims::DIMENSIONLESS)
        .factor("dielectric_form", clean(dielectric), Dims::FORCE_PER_AREA)
        .factor("closed_form", clean(closed), Dims::FORCE_PER_AREA)
        .input("beta", beta, Dims::INVERSE_ENERGY);
    Ok(slab_inputs(report, g, v, d1, d2))
}

/// Force per unit area between two Drude half-spaces at `T = 0`, assembled
/// from the dissipated energy `ΔE_P = 2τ H_P v⁶ G_P` over the interaction
/// time `τ` as `F_P = −ΔE_P/(2τv)`.
pub fn zero_t_slab_force(
    g: &SlabGeometry,
    v: f64,
    d1: SpectralAmplitude,
    d2: SpectralAmplitude,
    units: &UnitContext,
) -> Result<FrictionReport> {
    finite("v", v)?;
    let hp = h_p(d1, d2);
    let gp = g_p_slabs(g);
    let v2 = v * v;
    let direct = -hp * v2 * v2 * v * gp;
    // τ drops out; evaluate the energy route at two interaction times.
    let mut force = direct;
    for tau in [1.0, 7.25] {
        let de = 2.0 * tau * hp * v2 * v2 * v2 * gp;
        if de != 0.0 && de.is_normal() {
            let f = -de / (2.0 * tau * v);
            check("zero-temperature energy route", f, direct)?;
            force = f;
        }
    }
    let force = clean(force);
    let closed = zero_t_closed_form(g, v, d1.d, d2.d, 1.0, 1.0);
    check("zero-temperature slab force assembly", force, closed)?;
    physical_audit(
        "zero-temperature slab force in physical units",
        units,
        force,
        |g, v, a, b, _| zero_t_closed_form(g, v, a, b, units.hbar, units.c),
        g,
        v,
        d1.d,
        d2.d,
        1.0,
    )?;
    let d6 = libm::pow(g.d, 6.0);
    let dielectric = -(5.0 * PI * PI / (512.0 * d6)) * g.rho1 * g.rho2 * d1.d * d2.d * v2 * v;
    let report = FrictionReport::new(Regime::SlabsZeroT, ForceValue::Scalar(force))
        .factor("G_P", gp, G_P)
        .factor("H_P", hp, H_P)
        .factor("suppression_factor", v2, Dims::DIMENSIONLESS)
        .factor("dielectric_form", clean(dielectric), Dims::FORCE_PER_AREA)
        .factor("closed_form", clean(closed), Dims::FORCE_PER_AREA);
    Ok(slab_inputs(report, g, v, d1, d2))
}

fn convert(
    report: &FrictionReport,
    scale: impl Fn(Dims) -> f64,
    system: UnitSystem,
) -> FrictionReport {
    let map = |m: &BTreeMap<&'static str, Quantity>| {
        m.iter()
            .map(|(k, q)| (*k, Quantity::new(q.value * scale(q.dims), q.dims)))
            .collect()
    };
    FrictionReport {
        regime: report.regime,
        force: report
            .force
            .scaled(scale(report.regime.force_dims()), scale(Dims::FREQUENCY)),
        intermediates: map(&report.intermediates),
        inputs: map(&report.inputs),
        system,
    }
}

/// Expresses a report in reduced units.
pub fn to_reduced_units(report: &FrictionReport) -> FrictionReport {
    match report.system {
        UnitSystem::Reduced => report.clone(),
        UnitSystem::Physical(u) => convert(report, |d| 1.0 / u.factor(d), UnitSystem::Reduced),
    }
}

/// Expresses a report in the Gaussian units fixed by `units`.
pub fn to_physical_units(report: &FrictionReport, units: &UnitContext) -> FrictionReport {
    let reduced = to_reduced_units(report);
    convert(&reduced, |d| units.factor(d), UnitSystem::Physical(*units))
}
