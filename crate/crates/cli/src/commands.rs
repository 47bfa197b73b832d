//! Single-point computations. Each returns one [`Row`] with a column layout
//! fixed by the command.

use std::path::Path;

use casimir_friction::dipole_fields::{coupling_alpha, magnetic_field_full, magnetic_field_quasistatic_fourier};
use casimir_friction::friction_forces::{
    finite_t_slab_force, pair_force_sharp, pair_force_smoothed, plane_force, plane_force_sharp, smoothed_forces,
    to_physical_units, zero_t_slab_force, ForceValue, FrictionReport, Regime, UnitSystem,
};
use casimir_friction::geometry_coupling::{g_slabs_realspace, PairGeometry, PlaneGeometry, SlabGeometry};
use casimir_friction::materials_spectral::{drude_d, smoothed_h0, DrudeParams, SpectralAmplitude, SpectralDensity};
use casimir_friction::matsubara::{induced_free_energy_detailed, MatsubaraGrid};
use casimir_friction::oscillator_pair::{eigenfrequencies, ground_state_energy};
use casimir_friction::response_kinetics::OscState;
use casimir_friction::units::{Dims, UnitContext};
use casimir_friction::{Complex64, Vec3};

use crate::error::{CliError, CliResult};
use crate::params::{dims_of, Params};
use crate::spectrum::{read_spectrum, tabulated};
use crate::table::Row;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Body {
    Pair,
    Plane,
    Slabs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Temperature {
    Finite,
    Zero,
}

/// A computation that maps a parameter set to one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Computation {
    Eigen,
    FreeEnergy,
    Fields,
    Friction { body: Body, temperature: Temperature, sharp: bool },
}

impl Computation {
    pub fn name(&self) -> String {
        match self {
            Computation::Eigen => "eigen".into(),
            Computation::FreeEnergy => "free-energy".into(),
            Computation::Fields => "fields".into(),
            Computation::Friction { body, temperature, sharp } => {
                let b = match body {
                    Body::Pair => "pair",
                    Body::Plane => "plane",
                    Body::Slabs => "slabs",
                };
                let t = match temperature {
                    Temperature::Finite => "finite",
                    Temperature::Zero => "zero",
                };
                format!("friction {b} --temperature {t}{}", if *sharp { " --sharp" } else { "" })
            }
        }
    }

    pub fn run(&self, params: &Params) -> CliResult<Row> {
        match *self {
            Computation::Eigen => eigen(params),
            Computation::FreeEnergy => free_energy(params),
            Computation::Fields => fields(params),
            Computation::Friction { body, temperature, sharp } => friction(params, body, temperature, sharp),
        }
    }
}

fn reduced_only(params: &Params, what: &str) -> CliResult<()> {
    if is_gaussian(params) {
        return Err(CliError::Validation(format!("{what} works in reduced units only")));
    }
    if params.contains("temperature-kelvin") {
        return Err(CliError::Validation(format!("{what} takes --beta; --temperature-kelvin needs --units gaussian")));
    }
    Ok(())
}

pub fn is_gaussian(params: &Params) -> bool {
    params.text("units") == Some("gaussian")
}

fn eigen(params: &Params) -> CliResult<Row> {
    reduced_only(params, "eigen")?;
    let alpha = params.require("alpha")?;
    let (hi, lo) = eigenfrequencies(alpha)?;
    let mut row = Row::default();
    row.num("alpha", alpha, None)
        .num("omega_plus", hi, None)
        .num("omega_minus", lo, None)
        .num("product", hi * lo, None)
        .num("e0", ground_state_energy(alpha)?, None);
    Ok(row)
}

fn free_energy(params: &Params) -> CliResult<Row> {
    reduced_only(params, "free-energy")?;
    let alpha = params.require("alpha")?;
    let beta = params.require("beta")?;
    let tol = params.require("tail-tol")?;
    let grid = MatsubaraGrid::auto_for(alpha, beta, tol)?;
    let f = induced_free_energy_detailed(alpha, &grid)?;
    let mut row = Row::default();
    row.num("alpha", alpha, None)
        .num("beta", beta, None)
        .int("n_max", f.n_max as u64)
        .num("free_energy", f.value, None)
        .num("tail_estimate", f.tail_estimate, None)
        .num("error_bound", f.error_bound, None)
        .num("zero_temperature_limit", 0.5 * alpha * alpha, None);
    Ok(row)
}

/// Field of a unit electric dipole along x̂ at separation `d` along ẑ.
fn fields(params: &Params) -> CliResult<Row> {
    reduced_only(params, "fields")?;
    let d = params.require("d")?;
    let zr = params.require("zeta-r")?;
    let r = Vec3::new(0.0, 0.0, d);
    let zeta = Complex64::new(0.0, zr / d);
    let full = magnetic_field_full(Vec3::X, zeta, r)?;
    let qs = magnetic_field_quasistatic_fourier(Vec3::X, zeta, r)?;
    let [_, fy, _] = full.components();
    let [_, qy, _] = qs.components();
    let mut row = Row::default();
    row.num("d", d, None)
        .num("zeta_r", zr, None)
        .num("coupling_alpha", coupling_alpha(r)?, None)
        .num("h_full_y_re", fy.re, None)
        .num("h_full_y_im", fy.im, None)
        .num("h_quasistatic_y_re", qy.re, None)
        .num("h_quasistatic_y_im", qy.im, None)
        .num("relative_deviation", full.sub(qs).norm() / qs.norm(), None);
    Ok(row)
}

/// Unit context of a run: identity in reduced mode; CGS constants with the
/// given or geometry-derived length scale in Gaussian mode.
pub fn unit_context(params: &Params) -> CliResult<UnitContext> {
    if !is_gaussian(params) {
        if params.contains("temperature-kelvin") {
            return Err(CliError::Validation("--temperature-kelvin requires --units gaussian; use --beta in reduced units".into()));
        }
        return Ok(UnitContext::reduced());
    }
    let l = params
        .get("length-scale")
        .or_else(|| params.get("d"))
        .or_else(|| params.get("z0"))
        .unwrap_or(1.0);
    Ok(UnitContext::gaussian(l)?)
}

struct Inputs<'a> {
    params: &'a Params,
    units: UnitContext,
}

impl Inputs<'_> {
    /// A parameter converted to reduced units.
    fn get(&self, key: &str) -> Option<f64> {
        self.params.get(key).map(|v| v / self.units.factor(dims_of(key)))
    }

    fn require(&self, key: &str) -> CliResult<f64> {
        self.params.require(key)?;
        Ok(self.get(key).unwrap_or(f64::NAN))
    }

    fn beta(&self) -> CliResult<f64> {
        match (self.params.get("beta"), self.params.get("temperature-kelvin")) {
            (Some(_), Some(_)) => Err(CliError::Validation("give exactly one of --beta and --temperature-kelvin".into())),
            (Some(_), None) => self.require("beta"),
            (None, Some(t)) => Ok(self.units.beta_from_kelvin(t)? / self.units.factor(Dims::INVERSE_ENERGY)),
            (None, None) => Err(CliError::Config("missing required parameter '--beta' (or '--temperature-kelvin')".into())),
        }
    }

    /// Slope of body `i`: `--D<i>`, else the Drude value from
    /// `--omega-p`, `--nu` and `--rho<i>`.
    fn slope(&self, i: usize) -> CliResult<SpectralAmplitude> {
        let key = if i == 1 { "D1" } else { "D2" };
        if let Some(d) = self.get(key) {
            return Ok(SpectralAmplitude::new(d)?);
        }
        let rho_key = if i == 1 { "rho1" } else { "rho2" };
        match (self.get("omega-p"), self.get("nu"), self.get(rho_key)) {
            (Some(wp), Some(nu), Some(rho)) => Ok(drude_d(&DrudeParams::new(wp, nu, rho)?)),
            _ => Err(CliError::Config(format!(
                "missing '--{key}' (or '--omega-p', '--nu' and '--{rho_key}' for a Drude slope)"
            ))),
        }
    }

    fn spectrum(&self, i: usize) -> CliResult<SpectralDensity> {
        let key = if i == 1 { "spectrum-file-1" } else { "spectrum-file-2" };
        match self.params.text(key) {
            Some(path) => {
                let (m, s) = read_spectrum(Path::new(path))?;
                let fm = self.units.factor(Dims::FREQUENCY);
                let fs = self.units.factor(Dims::SPECTRAL_SLOPE.mul(Dims::FREQUENCY));
                tabulated(&m, &s, fm, fs)
            }
            None => Ok(SpectralDensity::linear(self.slope(i)?)),
        }
    }

    fn has_spectrum_files(&self) -> bool {
        self.params.contains("spectrum-file-1") || self.params.contains("spectrum-file-2")
    }

    fn oscillators(&self, beta: f64) -> CliResult<(OscState, OscState)> {
        let w1 = self.require("omega-1")?;
        let w2 = self.get("omega-2").unwrap_or(w1);
        let a1 = self.require("polarizability-1")?;
        let a2 = self.require("polarizability-2")?;
        Ok((OscState::thermal_polarizable(w1, a1, beta)?, OscState::thermal_polarizable(w2, a2, beta)?))
    }
}

fn friction(params: &Params, body: Body, temperature: Temperature, sharp: bool) -> CliResult<Row> {
    let units = unit_context(params)?;
    let inp = Inputs { params, units };
    if temperature == Temperature::Zero && body != Body::Slabs {
        return Err(CliError::Validation("the zero-temperature force is available for slabs only".into()));
    }
    if sharp && body == Body::Slabs {
        return Err(CliError::Validation("--sharp applies to pair and plane only".into()));
    }
    let v = inp.require("v")?;
    let report = match (body, temperature) {
        (Body::Slabs, Temperature::Zero) => {
            if inp.has_spectrum_files() {
                return Err(CliError::Validation("the zero-temperature slab force needs linear spectra (--D1, --D2)".into()));
            }
            let g = SlabGeometry::new(inp.require("d")?, inp.require("rho1")?, inp.require("rho2")?)?;
            zero_t_slab_force(&g, v, inp.slope(1)?, inp.slope(2)?, &units)?
        }
        (Body::Slabs, Temperature::Finite) => {
            let beta = inp.beta()?;
            let g = SlabGeometry::new(inp.require("d")?, inp.require("rho1")?, inp.require("rho2")?)?;
            if inp.has_spectrum_files() {
                let h0 = smoothed_h0(&inp.spectrum(1)?, &inp.spectrum(2)?, beta)?;
                let mut r = smoothed_forces(g_slabs_realspace(&g), v, h0, Regime::SlabsFiniteT)?;
                for (k, val, dims) in [
                    ("d", g.d, Dims::LENGTH),
                    ("rho1", g.rho1, Dims::NUMBER_DENSITY),
                    ("rho2", g.rho2, Dims::NUMBER_DENSITY),
                    ("beta", beta, Dims::INVERSE_ENERGY),
                ] {
                    r.inputs.insert(k, casimir_friction::units::Quantity::new(val, dims));
                }
                r
            } else {
                finite_t_slab_force(&g, v, inp.slope(1)?, inp.slope(2)?, beta, &units)?
            }
        }
        (Body::Plane, _) => {
            let beta = inp.beta()?;
            let g = PlaneGeometry::new(inp.require("z0")?, inp.require("rho2")?)?;
            if sharp {
                let (o1, o2) = inp.oscillators(beta)?;
                plane_force_sharp(&g, v, &o1, &o2, beta)?
            } else {
                plane_force(&g, v, &inp.spectrum(1)?, &inp.spectrum(2)?, beta)?
            }
        }
        (Body::Pair, _) => {
            let beta = inp.beta()?;
            let geom = PairGeometry::new(Vec3::new(0.0, 0.0, inp.require("d")?))?;
            let vel = Vec3::new(v, 0.0, 0.0);
            if sharp {
                let (o1, o2) = inp.oscillators(beta)?;
                pair_force_sharp(&geom, vel, &o1, &o2, beta)?
            } else {
                pair_force_smoothed(&geom, vel, &inp.spectrum(1)?, &inp.spectrum(2)?, beta)?
            }
        }
    };
    check_braking(&report, v)?;
    Ok(report_row(&report, &units))
}

fn check_braking(report: &FrictionReport, v: f64) -> CliResult<()> {
    let along = report.force.along(Vec3::new(v, 0.0, 0.0));
    if v != 0.0 && !(along < 0.0) {
        return Err(CliError::Numeric(format!("force {along} does not oppose the velocity")));
    }
    Ok(())
}

/// Flattens a reduced report; in Gaussian mode the values are converted and
/// the inputs are echoed in both systems.
pub fn report_row(report: &FrictionReport, units: &UnitContext) -> Row {
    let gaussian = !units.is_identity();
    let shown = if gaussian { to_physical_units(report, units) } else { report.clone() };
    let force_dims = report.regime.force_dims();
    let mut row = Row::default();
    row.text("regime", report.regime.name());
    match shown.force {
        ForceValue::Scalar(f) => {
            row.num("force", f, Some(force_dims));
        }
        ForceValue::Vector(f) => {
            row.num("force_x", f.x, Some(force_dims))
                .num("force_y", f.y, Some(force_dims))
                .num("force_z", f.z, Some(force_dims));
        }
        ForceValue::Delta(d) => {
            row.num("delta_amplitude", d.amplitude, Some(force_dims.mul(Dims::FREQUENCY)))
                .num("delta_frequency", d.at_frequency, Some(Dims::FREQUENCY));
        }
        ForceValue::DeltaVector(d) => {
            let dims = Some(force_dims.mul(Dims::FREQUENCY));
            row.num("delta_amplitude_x", d.amplitude.x, dims)
                .num("delta_amplitude_y", d.amplitude.y, dims)
                .num("delta_amplitude_z", d.amplitude.z, dims)
                .num("delta_frequency", d.at_frequency, Some(Dims::FREQUENCY));
        }
    }
    for (k, q) in &shown.intermediates {
        row.num(*k, q.value, Some(q.dims));
    }
    for (k, q) in &shown.inputs {
        row.num(format!("input_{k}"), q.value, Some(q.dims));
        if gaussian {
            row.num(format!("input_{k}_reduced"), report.inputs[k].value, None);
        }
    }
    row.text(
        "units",
        match shown.system {
            UnitSystem::Reduced => "reduced",
            UnitSystem::Physical(_) => "gaussian",
        },
    );
    row
}
