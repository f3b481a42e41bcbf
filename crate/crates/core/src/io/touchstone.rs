//! Touchstone version 1 reader and writer, two-port S-parameters only.

use std::fmt::{self, Write as _};

use log::warn;
use num_complex::Complex64;
use thiserror::Error;

use crate::nrw::{NrwError, SParamRow, SParamSeries};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TouchstoneError {
    #[error("missing '#' option line before data")]
    MissingOptionLine,
    #[error("line {line}: malformed option line: {reason}")]
    MalformedOption { line: usize, reason: String },
    #[error("line {line}: malformed data row: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("line {line}: frequency does not increase")]
    NonMonotoneFrequency { line: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyUnit {
    Hz,
    KHz,
    MHz,
    GHz,
}

impl FrequencyUnit {
    pub fn scale(self) -> f64 {
        match self {
            FrequencyUnit::Hz => 1.0,
            FrequencyUnit::KHz => 1e3,
            FrequencyUnit::MHz => 1e6,
            FrequencyUnit::GHz => 1e9,
        }
    }
}

impl fmt::Display for FrequencyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrequencyUnit::Hz => "Hz",
            FrequencyUnit::KHz => "kHz",
            FrequencyUnit::MHz => "MHz",
            FrequencyUnit::GHz => "GHz",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    /// Real, imaginary.
    RI,
    /// Magnitude, angle in degrees.
    MA,
    /// Magnitude in dB, angle in degrees.
    DB,
}

impl DataFormat {
    fn decode(self, x: f64, y: f64) -> Complex64 {
        match self {
            DataFormat::RI => Complex64::new(x, y),
            DataFormat::MA => Complex64::from_polar(x, y.to_radians()),
            DataFormat::DB => Complex64::from_polar(10f64.powf(x / 20.0), y.to_radians()),
        }
    }

    fn encode(self, z: Complex64) -> (f64, f64) {
        match self {
            DataFormat::RI => (z.re, z.im),
            DataFormat::MA => (z.norm(), z.arg().to_degrees()),
            // exact zero maps to the smallest positive magnitude
            DataFormat::DB => (20.0 * z.norm().max(f64::MIN_POSITIVE).log10(), z.arg().to_degrees()),
        }
    }
}

impl fmt::Display for DataFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DataFormat::RI => "RI",
            DataFormat::MA => "MA",
            DataFormat::DB => "DB",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TouchstoneRow {
    /// Hz.
    pub frequency: f64,
    pub s11: Complex64,
    pub s21: Complex64,
    pub s12: Complex64,
    pub s22: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TouchstoneDocument {
    pub unit: FrequencyUnit,
    pub format: DataFormat,
    /// Reference resistance from the option line (Ω); not used in computations.
    pub reference_resistance: f64,
    pub rows: Vec<TouchstoneRow>,
    /// Comment text without the leading `!`.
    pub comments: Vec<String>,
}

impl TouchstoneDocument {
    pub fn new(unit: FrequencyUnit, format: DataFormat, rows: Vec<TouchstoneRow>) -> Self {
        Self {
            unit,
            format,
            reference_resistance: 50.0,
            rows,
            comments: Vec::new(),
        }
    }

    /// Reciprocal two-port from `(f, s11, s21)` rows (`s12 = s21`, `s22 = s11`).
    pub fn from_sparams(rows: &[SParamRow], unit: FrequencyUnit, format: DataFormat) -> Self {
        let rows = rows
            .iter()
            .map(|r| TouchstoneRow {
                frequency: r.frequency,
                s11: r.s11,
                s21: r.s21,
                s12: r.s21,
                s22: r.s11,
            })
            .collect();
        Self::new(unit, format, rows)
    }

    /// `(f, s11, s21)` series for inversion of a slab of thickness `d`.
    pub fn to_series(&self, thickness: f64) -> Result<SParamSeries, NrwError> {
        let rows = self
            .rows
            .iter()
            .map(|r| SParamRow {
                frequency: r.frequency,
                s11: r.s11,
                s21: r.s21,
            })
            .collect();
        SParamSeries::new(rows, thickness)
    }
}

struct OptionLine {
    unit: FrequencyUnit,
    format: DataFormat,
    resistance: f64,
}

fn parse_option_line(body: &str, line: usize) -> Result<OptionLine, TouchstoneError> {
    let bad = |reason: String| TouchstoneError::MalformedOption { line, reason };
    let mut opt = OptionLine {
        unit: FrequencyUnit::GHz,
        format: DataFormat::MA,
        resistance: 50.0,
    };
    let mut tokens = body.split_whitespace();
    while let Some(tok) = tokens.next() {
        match tok.to_ascii_uppercase().as_str() {
            "HZ" => opt.unit = FrequencyUnit::Hz,
            "KHZ" => opt.unit = FrequencyUnit::KHz,
            "MHZ" => opt.unit = FrequencyUnit::MHz,
            "GHZ" => opt.unit = FrequencyUnit::GHz,
            "S" => {}
            "Y" | "Z" | "H" | "G" => return Err(bad(format!("parameter type {tok} is not supported"))),
            "RI" => opt.format = DataFormat::RI,
            "MA" => opt.format = DataFormat::MA,
            "DB" => opt.format = DataFormat::DB,
            "R" => {
                let value = tokens.next().ok_or_else(|| bad("R without a value".into()))?;
                opt.resistance = value
                    .parse()
                    .map_err(|_| bad(format!("bad reference resistance {value:?}")))?;
            }
            _ => return Err(bad(format!("unknown token {tok:?}"))),
        }
    }
    Ok(opt)
}

pub fn parse_touchstone(text: &str) -> Result<TouchstoneDocument, TouchstoneError> {
    let mut option: Option<OptionLine> = None;
    let mut rows: Vec<TouchstoneRow> = Vec::new();
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (body, comment) = match raw.find('!') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            comments.push(c.trim().to_string());
        }
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix('#') {
            if option.is_some() {
                warn!("line {line}: ignoring repeated option line");
            } else {
                option = Some(parse_option_line(rest, line)?);
            }
            continue;
        }
        let opt = option.as_ref().ok_or(TouchstoneError::MissingOptionLine)?;
        let values = body
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>().map_err(|_| TouchstoneError::MalformedRow {
                    line,
                    reason: format!("not a number: {t:?}"),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if values.len() != 9 {
            return Err(TouchstoneError::MalformedRow {
                line,
                reason: format!("expected 9 values, found {}", values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(TouchstoneError::MalformedRow {
                line,
                reason: "non-finite value".into(),
            });
        }
        let frequency = values[0] * opt.unit.scale();
        if let Some(prev) = rows.last() {
            if !(frequency > prev.frequency) {
                return Err(TouchstoneError::NonMonotoneFrequency { line });
            }
        }
        let p = |i: usize| opt.format.decode(values[i], values[i + 1]);
        rows.push(TouchstoneRow {
            frequency,
            s11: p(1),
            s21: p(3),
            s12: p(5),
            s22: p(7),
        });
    }
    let opt = option.ok_or(TouchstoneError::MissingOptionLine)?;
    if opt.resistance != 50.0 {
        warn!(
            "reference resistance {} Ω ignored; impedances are normalized",
            opt.resistance
        );
    }
    Ok(TouchstoneDocument {
        unit: opt.unit,
        format: opt.format,
        reference_resistance: opt.resistance,
        rows,
        comments,
    })
}

pub fn write_touchstone(doc: &TouchstoneDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        let _ = writeln!(out, "! {c}");
    }
    let _ = writeln!(out, "# {} S {} R {}", doc.unit, doc.format, doc.reference_resistance);
    for r in &doc.rows {
        let _ = write!(out, "{:.16e}", r.frequency / doc.unit.scale());
        for z in [r.s11, r.s21, r.s12, r.s22] {
            let (x, y) = doc.format.encode(z);
            let _ = write!(out, " {x:.16e} {y:.16e}");
        }
        out.push('\n');
    }
    out
}
