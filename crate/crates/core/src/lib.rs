//! Plasmonic-cavity optomechanics for nanomechanical mass sensing.
//!
//! The crate models a metallic nanosphere (isotropic or radially anisotropic)
//! whose localized surface plasmon (LSP) modes couple parametrically to the
//! breathing-like vibration of a suspended graphene nanoribbon. From the
//! material and geometry it derives the LSP mode catalog (resonance, widths,
//! mode volume, optomechanical coupling), the pump-probe transmission of a
//! selected mode, and the mass resolution read off the transmission feature.
//!
//! Layout, bottom-up:
//!
//! * [`material`]: Drude permittivities and the anisotropic-to-effective mapping.
//! * [`specfun`]: gamma, double factorials, fractional-order spherical Bessel
//!   and Riccati functions, small-argument asymptotics.
//! * [`mie`]: T-matrix elements, Mie coefficients and quasi-static polarizability.
//! * [`plasmon`]: LSP mode catalog, coupling spectra, scattering Green's function.
//! * [`response`]: steady state and linearized probe response.
//! * [`sensing`]: peak analysis, mass resolution, Casimir estimate, sweeps.
//! * [`export`]: CSV/JSON record schemas shared by every emitter.
//!
//! All quantities are SI; every frequency is an angular frequency in rad/s.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod export;
pub mod material;
pub mod mie;
pub mod plasmon;
pub mod response;
pub mod sensing;
pub mod specfun;

pub use error::{Error, Result};
pub use material::{AnisotropicMaterial, DrudeModel, EffectiveMode};
pub use plasmon::{Geometry, MechanicalMode, PlasmonMode};
pub use response::{DriveConfig, ProbeResponse, ProbeSpectrum, SteadyState};
pub use sensing::{PeakStats, Scenario, SweepAxis, SweepSpec};
