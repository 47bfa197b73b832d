//! Quasistatic fields of oscillating electric and magnetic dipoles.
//!
//! Conventions: `c = 1`; the separation `r` always points from the electric
//! toward the magnetic dipole. With that single convention the magnetic field
//! of an electric source and the electric field of a magnetic source share
//! the Biot–Savart form `(rate × r̂)/r²`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{ComplexVec3, Vec3};

/// Which field a dipole source radiates into the quasistatic model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleKind {
    Electric,
    Magnetic,
}

/// A point dipole with its moment and the moment's time derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleSource {
    pub kind: DipoleKind,
    pub moment: Vec3,
    pub moment_rate: Vec3,
    pub position: Vec3,
}

impl DipoleSource {
    /// Quasistatic field at `observer`: the magnetic field of an electric
    /// source, or the electric field of a magnetic source.
    pub fn field_at(&self, observer: Vec3) -> Result<Vec3> {
        match self.kind {
            DipoleKind::Electric => {
                magnetic_field_quasistatic(self.moment_rate, observer - self.position)
            }
            DipoleKind::Magnetic => {
                electric_field_quasistatic(self.moment_rate, self.position - observer)
            }
        }
    }
}

fn unit_and_length(r: Vec3) -> Result<(Vec3, f64)> {
    let len = r.norm();
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::ZeroSeparation);
    }
    Ok((r.scale(1.0 / len), len))
}

/// Fourier-domain magnetic field of an oscillating electric dipole,
/// `H = −ζ(1 + ζr) e^{−ζr} (r̂ × P)/r²` with `ζ = iω/c`.
pub fn magnetic_field_full(p: Vec3, zeta: Complex64, r: Vec3) -> Result<ComplexVec3> {
    let (rhat, len) = unit_and_length(r)?;
    let zr = zeta * len;
    let factor = -zeta * (1.0 + zr) * (-zr).exp() / (len * len);
    Ok(ComplexVec3::from_real(rhat.cross(p), factor))
}

/// Small-`ζr` limit of [`magnetic_field_full`]: `H = −ζ (r̂ × P)/r²`.
pub fn magnetic_field_quasistatic_fourier(
    p: Vec3,
    zeta: Complex64,
    r: Vec3,
) -> Result<ComplexVec3> {
    let (rhat, len) = unit_and_length(r)?;
    Ok(ComplexVec3::from_real(rhat.cross(p), -zeta / (len * len)))
}

/// Biot–Savart field of a dipole current, `H = (Ṗ × r̂)/r²`.
pub fn magnetic_field_quasistatic(p_dot: Vec3, r: Vec3) -> Result<Vec3> {
    let (rhat, len) = unit_and_length(r)?;
    Ok(p_dot.cross(rhat).scale(1.0 / (len * len)))
}

/// Induced electric field of a changing magnetic moment, `E = (Ṁ × r̂)/r²`,
/// with `r̂` directed from the electric toward the magnetic dipole.
pub fn electric_field_quasistatic(m_dot: Vec3, r: Vec3) -> Result<Vec3> {
    let (rhat, len) = unit_and_length(r)?;
    Ok(m_dot.cross(rhat).scale(1.0 / (len * len)))
}

/// Coupling constant `α = 1/(2 c r²)` of the oscillator model.
pub fn coupling_alpha(r: Vec3) -> Result<f64> {
    let (_, len) = unit_and_length(r)?;
    Ok(0.5 / (len * len))
}

/// The two interaction energies `(−ΔL_H, −ΔL_E) = (−H·M, −E·P)`.
///
/// They differ by the total derivative `2α d(P·M-type product)/dt`, so either
/// one yields the same equations of motion.
pub fn interaction_energies(
    p: Vec3,
    p_dot: Vec3,
    m: Vec3,
    m_dot: Vec3,
    r: Vec3,
) -> Result<(f64, f64)> {
    let h = magnetic_field_quasistatic(p_dot, r)?;
    let e = electric_field_quasistatic(m_dot, r)?;
    Ok((-h.dot(m), -e.dot(p)))
}
