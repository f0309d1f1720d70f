//! Tabular record layouts for emitted data and their validators.
//!
//! Floats are written in shortest round-trip scientific notation, so equal
//! inputs always produce byte-identical files.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plasmon::PlasmonMode;
use crate::response::ProbeSpectrum;
use crate::sensing::{SweepAxis, SweepRow};

pub const MODES_HEADER: &[&str] =
    &["n", "omega_n", "omega_n_over_omega_p", "gamma_rad", "gamma_total", "V_n", "g_op"];
pub const SPECTRUM_HEADER: &[&str] = &["delta_rad_s", "re_t", "im_t", "t_sq", "flags"];
pub const SPECTRUM_FIGURE_COLUMN: &str = "delta_fig_rad_s";
pub const SWEEP_HEADER_TAIL: &[&str] = &[
    "index", "n", "omega_n", "kappa", "g_op", "omega_pu", "peak_center", "peak_height", "fwhm", "baseline",
    "delta_m", "error",
];

/// Shortest round-trip scientific rendering; `NaN`/`inf` for non-finite values.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:e}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn write_rows(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let map = |e: csv::Error| Error::Internal(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(map)?;
    for r in rows {
        w.write_record(&r).map_err(map)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn owned(h: &[&str]) -> Vec<String> {
    h.iter().map(|s| s.to_string()).collect()
}

/// Mode catalog table.
pub fn modes_csv(modes: &[PlasmonMode], omega_p: f64) -> Result<String> {
    write_rows(
        &owned(MODES_HEADER),
        modes.iter().map(|m| {
            vec![
                m.n.to_string(),
                fmt_f64(m.omega_n),
                fmt_f64(m.omega_n / omega_p),
                fmt_f64(m.gamma_rad),
                fmt_f64(m.gamma_total),
                fmt_f64(m.mode_volume),
                fmt_f64(m.g_op),
            ]
        }),
    )
}

/// Probe transmission table. With `figure_axes` an extra column holds the
/// detuning measured from the mode, `ω_n − ω_pr = Δ − δ`.
pub fn spectrum_csv(spectrum: &ProbeSpectrum, figure_axes: bool) -> Result<String> {
    let mut header = owned(SPECTRUM_HEADER);
    if figure_axes {
        header.push(SPECTRUM_FIGURE_COLUMN.into());
    }
    let big_delta = spectrum.model.delta_pump;
    write_rows(
        &header,
        spectrum.points.iter().map(|p| {
            let mut r = vec![
                fmt_f64(p.delta),
                fmt_f64(p.t.re),
                fmt_f64(p.t.im),
                fmt_f64(p.t_sq),
                p.flag.clone().unwrap_or_default(),
            ];
            if figure_axes {
                r.push(fmt_f64(big_delta - p.delta));
            }
            r
        }),
    )
}

/// Coupling spectra `K_n(ω)` of every mode on a frequency grid.
pub fn coupling_csv(modes: &[PlasmonMode], omegas: &[f64], omega_p: f64) -> Result<String> {
    let mut header = vec!["omega_rad_s".to_string(), "omega_over_omega_p".to_string()];
    header.extend(modes.iter().map(|m| format!("K_{}", m.n)));
    let mut rows = Vec::with_capacity(omegas.len());
    for &w in omegas {
        let mut r = vec![fmt_f64(w), fmt_f64(w / omega_p)];
        for m in modes {
            r.push(fmt_f64(m.coupling_spectrum(w)?));
        }
        rows.push(r);
    }
    write_rows(&header, rows)
}

/// Sweep results, one row per (axis value, mode).
pub fn sweep_csv(axis: SweepAxis, rows: &[SweepRow]) -> Result<String> {
    let mut header = vec![axis.name().to_string()];
    header.extend(owned(SWEEP_HEADER_TAIL));
    write_rows(
        &header,
        rows.iter().map(|r| {
            vec![
                fmt_f64(r.axis_value),
                r.index.to_string(),
                r.n.to_string(),
                opt(r.omega_n),
                opt(r.kappa),
                opt(r.g_op),
                opt(r.omega_pu),
                opt(r.peak_center),
                opt(r.peak_height),
                opt(r.fwhm),
                opt(r.baseline),
                opt(r.delta_m),
                r.error.clone().unwrap_or_default(),
            ]
        }),
    )
}

/// Deterministic pretty JSON.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(format!("json encoding failed: {e}")))
}

/// Kinds of emitted tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Modes,
    Spectrum,
    Coupling,
    Sweep,
}

fn numeric(s: &str) -> bool {
    s.parse::<f64>().is_ok()
}

/// Re-parses an emitted table and checks header and cell types.
/// Returns the number of data rows.
pub fn validate_table(kind: TableKind, text: &str) -> Result<usize> {
    let bad = |m: String| Error::Configuration(format!("{kind:?} table: {m}"));
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> =
        rdr.headers().map_err(|e| bad(e.to_string()))?.iter().map(str::to_string).collect();
    // columns that hold free text
    let text_cols: Vec<usize> = match kind {
        TableKind::Modes => {
            if header != owned(MODES_HEADER) {
                return Err(bad(format!("unexpected header {header:?}")));
            }
            vec![]
        }
        TableKind::Spectrum => {
            let base = owned(SPECTRUM_HEADER);
            let ok = header == base
                || (header.len() == base.len() + 1
                    && header[..base.len()] == base[..]
                    && header[base.len()] == SPECTRUM_FIGURE_COLUMN);
            if !ok {
                return Err(bad(format!("unexpected header {header:?}")));
            }
            vec![4]
        }
        TableKind::Coupling => {
            let ok = header.len() >= 3
                && header[0] == "omega_rad_s"
                && header[1] == "omega_over_omega_p"
                && header[2..].iter().enumerate().all(|(i, h)| *h == format!("K_{}", i + 1));
            if !ok {
                return Err(bad(format!("unexpected header {header:?}")));
            }
            vec![]
        }
        TableKind::Sweep => {
            let names = ["ar_inf", "r_m", "n", "pump_intensity", "radius"];
            if header.len() != SWEEP_HEADER_TAIL.len() + 1
                || !names.contains(&header[0].as_str())
                || header[1..] != owned(SWEEP_HEADER_TAIL)[..]
            {
                return Err(bad(format!("unexpected header {header:?}")));
            }
            vec![header.len() - 1]
        }
    };
    let mut count = 0;
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if rec.len() != header.len() {
            return Err(bad(format!("row {i} has {} cells", rec.len())));
        }
        for (j, cell) in rec.iter().enumerate() {
            let empty_ok = kind == TableKind::Sweep;
            if !text_cols.contains(&j) && !numeric(cell) && !(empty_ok && cell.is_empty()) {
                return Err(bad(format!("row {i} column {} is not numeric: {cell:?}", header[j])));
            }
        }
        count += 1;
    }
    Ok(count)
}
