//! Records written next to the data tables, and re-validation of every
//! emitted file.

use serde::{Deserialize, Serialize};

use plasmosense::export::{validate_table, TableKind};
use plasmosense::sensing::ReferenceCheck;
use plasmosense::{PeakStats, Scenario};

use crate::config::{Assumed, SenseOptions};
use crate::error::{CliError, Result};

/// Conventions and assumed values a reader needs to interpret the tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conventions {
    pub frequency_units: String,
    pub frequencies_are_ordinary: bool,
    pub delta: String,
    pub figure_axis: Option<String>,
    pub transmission_rate: String,
    pub pump_detuning: Option<Assumed>,
    pub enhancement: Assumed,
    pub detuning_grid: String,
    pub raman_convention: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub preset: Option<String>,
    pub conventions: Conventions,
    pub scenario: Scenario,
    /// Quantum yield, carried but unused.
    pub eta: Option<f64>,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSense {
    pub n: u32,
    pub omega_n: f64,
    pub omega_pu: f64,
    pub peak: PeakStats,
    pub fwhm: f64,
    /// `extracted`, `override` or `synthetic`.
    pub fwhm_source: String,
    pub delta_m: f64,
    pub mass_check: ReferenceCheck,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CasimirEstimate {
    pub radius: f64,
    pub gap: f64,
    pub force: f64,
    pub check: ReferenceCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SenseSummary {
    pub options: SenseOptions,
    pub modes: Vec<ModeSense>,
    pub casimir: CasimirEstimate,
}

fn json<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<()> {
    serde_json::from_str::<T>(text)
        .map(|_| ())
        .map_err(|e| CliError::validation(name, format!("does not match its schema: {e}")))
}

/// Re-parses an emitted file by name and checks it against its layout.
pub fn validate_output(name: &str, text: &str) -> Result<()> {
    let table = |kind| {
        validate_table(kind, text).map(|_| ()).map_err(|e| CliError::validation(name, e.to_string()))
    };
    if name.ends_with(".meta.json") {
        json::<Metadata>(name, text)
    } else if name == "sense.json" {
        json::<SenseSummary>(name, text)
    } else if name == "modes.csv" {
        table(TableKind::Modes)
    } else if name == "coupling.csv" {
        table(TableKind::Coupling)
    } else if name.starts_with("transmission_n") && name.ends_with(".csv") {
        table(TableKind::Spectrum)
    } else if name == "sweep.csv" {
        table(TableKind::Sweep)
    } else {
        Err(CliError::validation(name, "no schema for this output"))
    }
}
