//! Physical quantities as written in configuration files.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use plasmosense::constants::{ANGSTROM, ATOMIC_MASS_UNIT, NANOMETER};

/// `{ value = 1.9, units = "PHz" }`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quantity {
    pub value: f64,
    pub units: String,
}

/// Dimension a field is expected to carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Frequency,
    Length,
    Mass,
    Intensity,
}

impl Dimension {
    fn accepted(self) -> &'static [&'static str] {
        match self {
            Dimension::Frequency => &[
                "rad/s", "krad/s", "Mrad/s", "Grad/s", "Trad/s", "Prad/s", "Hz", "kHz", "MHz", "GHz", "THz", "PHz",
            ],
            Dimension::Length => &["m", "mm", "um", "nm", "A"],
            Dimension::Mass => &["kg", "g", "amu"],
            Dimension::Intensity => &["W/m^2", "W/cm^2", "kW/cm^2", "MW/cm^2"],
        }
    }
}

fn prefix(p: &str) -> Option<f64> {
    Some(match p {
        "" => 1.0,
        "k" => 1e3,
        "M" => 1e6,
        "G" => 1e9,
        "T" => 1e12,
        "P" => 1e15,
        _ => return None,
    })
}

/// Converts to SI. Frequencies come out in rad/s: `*rad/s` units are taken
/// literally, `*Hz` units are read as angular unless `ordinary` is set, in
/// which case they are multiplied by 2π.
pub fn to_si(q: &Quantity, dim: Dimension, ordinary: bool) -> Result<f64, String> {
    if !q.value.is_finite() {
        return Err(format!("value must be finite, got {}", q.value));
    }
    let u = q.units.trim();
    let factor = match dim {
        Dimension::Frequency => {
            if let Some(p) = u.strip_suffix("rad/s") {
                prefix(p)
            } else if let Some(p) = u.strip_suffix("Hz") {
                prefix(p).map(|f| if ordinary { 2.0 * PI * f } else { f })
            } else {
                None
            }
        }
        Dimension::Length => match u {
            "m" => Some(1.0),
            "mm" => Some(1e-3),
            "um" => Some(1e-6),
            "nm" => Some(NANOMETER),
            "A" => Some(ANGSTROM),
            _ => None,
        },
        Dimension::Mass => match u {
            "kg" => Some(1.0),
            "g" => Some(1e-3),
            "amu" => Some(ATOMIC_MASS_UNIT),
            _ => None,
        },
        Dimension::Intensity => match u {
            "W/m^2" => Some(1.0),
            "W/cm^2" => Some(1e4),
            "kW/cm^2" => Some(1e7),
            "MW/cm^2" => Some(1e10),
            _ => None,
        },
    };
    factor
        .map(|f| q.value * f)
        .ok_or_else(|| format!("unknown {dim:?} unit {:?}; expected one of {:?}", q.units, dim.accepted()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64, u: &str) -> Quantity {
        Quantity { value: v, units: u.into() }
    }

    #[test]
    fn frequency_conventions() {
        assert_eq!(to_si(&q(1.9, "PHz"), Dimension::Frequency, false).unwrap(), 1.9e15);
        assert_eq!(to_si(&q(1.9, "Prad/s"), Dimension::Frequency, true).unwrap(), 1.9e15);
        assert_eq!(to_si(&q(1.0, "GHz"), Dimension::Frequency, true).unwrap(), 2.0 * PI * 1e9);
        assert!(to_si(&q(1.0, "nm"), Dimension::Frequency, false).is_err());
    }

    #[test]
    fn other_dimensions() {
        assert_eq!(to_si(&q(10.0, "nm"), Dimension::Length, false).unwrap(), 10.0 * NANOMETER);
        assert_eq!(to_si(&q(400.0, "kW/cm^2"), Dimension::Intensity, false).unwrap(), 4e9);
        assert_eq!(to_si(&q(1.0, "amu"), Dimension::Mass, false).unwrap(), ATOMIC_MASS_UNIT);
        assert!(to_si(&q(f64::NAN, "kg"), Dimension::Mass, false).is_err());
    }
}
