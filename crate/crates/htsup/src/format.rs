//! On-disk formats. Every number is written with 17 significant digits in
//! scientific notation so that outputs compare byte for byte.

use std::io::{self, Write};
use std::path::Path;

use htsup_core::laws::LimitLaw;
use htsup_core::normalize::NormalizationSolution;
use htsup_core::simulate::{Method, SupSample};
use serde::ser::Serialize;
use serde::{Deserialize, Serialize as SerializeDerive};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};

/// `{:.16e}`, the shortest fixed-width form that round-trips every `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON with numbers in [`num`] form; non-finite numbers become `null`.
struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(num(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("in-memory JSON serialization");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// Writes `text` to `path`, or to standard output when `path` is absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Error::io("<stdout>", e))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, SerializeDerive, Deserialize)]
pub struct SolutionRow {
    pub param: f64,
    pub d: f64,
    pub delta: f64,
    pub residual: f64,
    pub iterations: u32,
}

impl From<&NormalizationSolution> for SolutionRow {
    fn from(s: &NormalizationSolution) -> Self {
        SolutionRow { param: s.param, d: s.d, delta: s.delta, residual: s.residual, iterations: s.iterations }
    }
}

/// JSON description of a [`LimitLaw`]; empirical samples live in their own CSV.
#[derive(Debug, Clone, PartialEq, SerializeDerive, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LimitLawDoc {
    Ml { alpha: f64, scale: f64 },
    Exp { rate: f64 },
    Empirical { alpha: f64, beta: f64, count: usize },
}

impl From<&LimitLaw> for LimitLawDoc {
    fn from(law: &LimitLaw) -> Self {
        match law {
            LimitLaw::MittagLeffler { alpha, scale } => LimitLawDoc::Ml { alpha: *alpha, scale: *scale },
            LimitLaw::Exponential { rate } => LimitLawDoc::Exp { rate: *rate },
            LimitLaw::EmpiricalReference { samples, alpha, beta } => {
                LimitLawDoc::Empirical { alpha: *alpha, beta: *beta, count: samples.len() }
            }
        }
    }
}

pub const SAMPLE_HEADER: &str = "value,method,horizon,err_bound";

/// Sample batch CSV; an untruncated draw has an empty horizon field.
pub fn samples_csv(samples: &[SupSample]) -> String {
    let mut out = String::with_capacity(64 * (samples.len() + 1));
    out.push_str(SAMPLE_HEADER);
    out.push('\n');
    for s in samples {
        let horizon = s.horizon.map(num).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", num(s.value), s.method.tag(), horizon, num(s.error_bound)));
    }
    out
}

pub fn parse_samples_csv(path: &Path, text: &str) -> Result<Vec<SupSample>> {
    let bad = |line: usize, message: String| Error::Csv { path: path.into(), line, message };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == SAMPLE_HEADER => {}
        _ => return Err(bad(1, format!("expected header `{SAMPLE_HEADER}`"))),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(i + 1, format!("expected 4 fields, found {}", fields.len())));
        }
        let float = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(i + 1, format!("`{s}`: {e}")));
        let method = Method::from_tag(fields[1].trim()).ok_or_else(|| bad(i + 1, format!("unknown method `{}`", fields[1])))?;
        let horizon = if fields[2].trim().is_empty() { None } else { Some(float(fields[2])?) };
        out.push(SupSample { value: float(fields[0])?, method, horizon, error_bound: float(fields[3])? });
    }
    Ok(out)
}

/// One value per line.
pub fn values_csv(values: &[f64]) -> String {
    let mut out = String::with_capacity(24 * values.len());
    for &v in values {
        out.push_str(&num(v));
        out.push('\n');
    }
    out
}

pub fn read_values_csv(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim().parse::<f64>().map_err(|e| Error::Csv { path: path.into(), line: i + 1, message: format!("`{l}`: {e}") })
        })
        .collect()
}
