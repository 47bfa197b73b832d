//! Reduced units (`ħ = c = k_B = 1`) and their conversion to Gaussian units.
//!
//! A [`UnitContext`] fixes a length scale `L`. Time then scales as `L/c` and
//! energy as `ħc/L`, so every reduced quantity with Gaussian dimensions
//! `cm^a s^b erg^e` converts by the factor `L^a (L/c)^b (ħc/L)^e`.

use crate::error::{Error, Result};

/// Powers of centimetre, second and erg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims {
    pub cm: i32,
    pub s: i32,
    pub erg: i32,
}

impl Dims {
    pub const fn new(cm: i32, s: i32, erg: i32) -> Self {
        Self { cm, s, erg }
    }

    pub const DIMENSIONLESS: Dims = Dims::new(0, 0, 0);
    pub const LENGTH: Dims = Dims::new(1, 0, 0);
    pub const TIME: Dims = Dims::new(0, 1, 0);
    pub const FREQUENCY: Dims = Dims::new(0, -1, 0);
    pub const ENERGY: Dims = Dims::new(0, 0, 1);
    pub const INVERSE_ENERGY: Dims = Dims::new(0, 0, -1);
    pub const VELOCITY: Dims = Dims::new(1, -1, 0);
    pub const NUMBER_DENSITY: Dims = Dims::new(-3, 0, 0);
    pub const FORCE: Dims = Dims::new(-1, 0, 1);
    pub const FORCE_PER_AREA: Dims = Dims::new(-3, 0, 1);
    pub const POLARIZABILITY: Dims = Dims::new(3, 0, 0);
    /// Slope `D` of the spectral weight `m²α(m²) = D·m`.
    pub const SPECTRAL_SLOPE: Dims = Dims::new(3, 0, -1);

    pub const fn mul(self, other: Dims) -> Dims {
        Dims::new(self.cm + other.cm, self.s + other.s, self.erg + other.erg)
    }

    pub const fn powi(self, n: i32) -> Dims {
        Dims::new(self.cm * n, self.s * n, self.erg * n)
    }

    pub const fn inv(self) -> Dims {
        self.powi(-1)
    }
}

impl core::fmt::Display for Dims {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if *self == Dims::DIMENSIONLESS {
            return f.write_str("1");
        }
        let mut first = true;
        for (name, p) in [("cm", self.cm), ("s", self.s), ("erg", self.erg)] {
            if p == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if p == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{p}")?;
            }
        }
        Ok(())
    }
}

/// A value tagged with its Gaussian dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dims: Dims,
}

impl Quantity {
    pub const fn new(value: f64, dims: Dims) -> Self {
        Self { value, dims }
    }

    pub const fn dimensionless(value: f64) -> Self {
        Self::new(value, Dims::DIMENSIONLESS)
    }
}

pub const HBAR_CGS: f64 = 1.054_571_817e-27;
pub const C_CGS: f64 = 2.997_924_58e10;
pub const K_B_CGS: f64 = 1.380_649e-16;

/// Scale factors linking reduced and physical units.
///
/// `frequency_scale` is `c / length_scale` and is derived, never set
/// independently, so the conversion is always invertible and consistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitContext {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
    pub length_scale: f64,
    pub frequency_scale: f64,
}

impl UnitContext {
    pub fn new(hbar: f64, c: f64, k_b: f64, length_scale: f64) -> Result<Self> {
        for v in [hbar, c, k_b, length_scale] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidUnits(
                    "scale factors must be finite and positive",
                ));
            }
        }
        let frequency_scale = c / length_scale;
        if !(frequency_scale.is_finite() && frequency_scale > 0.0) {
            return Err(Error::InvalidUnits(
                "frequency scale c/length_scale is not representable",
            ));
        }
        Ok(Self {
            hbar,
            c,
            k_b,
            length_scale,
            frequency_scale,
        })
    }

    /// The identity context: every factor is one.
    pub fn reduced() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            k_b: 1.0,
            length_scale: 1.0,
            frequency_scale: 1.0,
        }
    }

    /// CGS constants with reduced lengths measured in `length_scale` cm.
    pub fn gaussian(length_scale: f64) -> Result<Self> {
        Self::new(HBAR_CGS, C_CGS, K_B_CGS, length_scale)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::reduced()
    }

    pub fn time_scale(&self) -> f64 {
        1.0 / self.frequency_scale
    }

    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.frequency_scale
    }

    /// Multiplier taking a reduced value with `dims` to physical units.
    pub fn factor(&self, dims: Dims) -> f64 {
        libm::pow(self.length_scale, dims.cm as f64)
            * libm::pow(self.time_scale(), dims.s as f64)
            * libm::pow(self.energy_scale(), dims.erg as f64)
    }

    pub fn to_physical(&self, q: Quantity) -> Quantity {
        Quantity::new(q.value * self.factor(q.dims), q.dims)
    }

    pub fn to_reduced(&self, q: Quantity) -> Quantity {
        Quantity::new(q.value / self.factor(q.dims), q.dims)
    }

    /// Physical inverse temperature `1/(k_B T)` from a temperature in kelvin.
    pub fn beta_from_kelvin(&self, kelvin: f64) -> Result<f64> {
        if !(kelvin.is_finite() && kelvin > 0.0) {
            return Err(Error::domain(
                "temperature_kelvin",
                kelvin,
                "must be finite and > 0",
            ));
        }
        Ok(1.0 / (self.k_b * kelvin))
    }

    /// Temperature in kelvin for a physical inverse temperature.
    pub fn kelvin_from_beta(&self, beta: f64) -> f64 {
        1.0 / (self.k_b * beta)
    }
}

impl Default for UnitContext {
    fn default() -> Self {
        Self::reduced()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_context_has_unit_factors() {
        let u = UnitContext::reduced();
        assert!(u.is_identity());
        for d in [
            Dims::FORCE_PER_AREA,
            Dims::SPECTRAL_SLOPE,
            Dims::new(6, 3, 1),
        ] {
            assert_eq!(u.factor(d), 1.0);
        }
    }

    #[test]
    fn invalid_contexts_are_rejected() {
        assert!(UnitContext::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(UnitContext::new(1.0, f64::NAN, 1.0, 1.0).is_err());
        assert!(UnitContext::new(1.0, 1.0, 1.0, 1e-320).is_err());
    }

    #[test]
    fn round_trip_and_composition() {
        let u = UnitContext::gaussian(1e-6).unwrap();
        let q = Quantity::new(-0.125, Dims::FORCE_PER_AREA);
        let back = u.to_reduced(u.to_physical(q));
        assert!((back.value - q.value).abs() <= 1e-14 * q.value.abs());
        let a = Dims::VELOCITY;
        let b = Dims::TIME;
        let rel = u.factor(a.mul(b)) / (u.factor(a) * u.factor(b)) - 1.0;
        assert!(rel.abs() < 1e-14);
    }

    #[test]
    fn length_rescaling_of_force_per_area() {
        // erg/cm³: energy ∝ 1/L and volume ∝ L³ give L⁻⁴.
        let a = UnitContext::gaussian(1e-6).unwrap();
        let b = UnitContext::gaussian(2e-6).unwrap();
        let ratio = b.factor(Dims::FORCE_PER_AREA) / a.factor(Dims::FORCE_PER_AREA);
        assert!((ratio - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn temperature_conversion() {
        let u = UnitContext::gaussian(1e-4).unwrap();
        let beta = u.beta_from_kelvin(300.0).unwrap();
        assert!((u.kelvin_from_beta(beta) - 300.0).abs() < 1e-12);
        assert!(u.beta_from_kelvin(-1.0).is_err());
    }

    #[test]
    fn dims_display() {
        extern crate std;
        use std::string::ToString;
        assert_eq!(Dims::FORCE_PER_AREA.to_string(), "cm^-3 erg");
        assert_eq!(Dims::DIMENSIONLESS.to_string(), "1");
    }
}
