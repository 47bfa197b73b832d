//! # casimir-friction-core
//!
//! Quasistatic Casimir (van der Waals) friction between a magnetically and an
//! electrically polarizable body, in reduced units `ħ = c = k_B = 1`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`numerics`]: quadrature, seeded Monte-Carlo, certified series sums,
//!   finite differences and sinusoid fitting. These are the oracles every
//!   physics module is checked against.
//! - [`dipole_fields`]: quasistatic fields of oscillating dipoles and their
//!   interaction energies.
//! - [`oscillator_pair`]: the coupled electric/magnetic oscillator model.
//! - [`matsubara`]: imaginary-time mode sums for the induced free energy.
//! - [`response_kinetics`]: Kubo response kernels and δ-function friction
//!   amplitudes for sharp oscillators.
//! - [`materials_spectral`]: polarizability spectra and the Drude model.
//! - [`geometry_coupling`]: coupling tensors and half-space reduction factors.
//! - [`friction_forces`]: assembled forces and unit conversion.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dipole_fields;
pub mod error;
pub mod friction_forces;
pub mod geometry_coupling;
pub mod materials_spectral;
pub mod matsubara;
pub mod numerics;
pub mod oscillator_pair;
pub mod response_kinetics;
pub mod units;
mod vec3;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use vec3::{ComplexVec3, Vec3};
