//! Run parameters: built-in defaults, an optional `key = value` file, then
//! command-line flags, in increasing precedence.

use std::path::{Path, PathBuf};

use crate::CliError;

pub const DEFAULT_KR: f64 = 100.0;
pub const DEFAULT_SAMPLES: usize = 2000;
pub const DEFAULT_M: i64 = 0;
pub const DEFAULT_OMEGA0_OVER_GAMMA: f64 = 1000.0;
pub const DEFAULT_CUTOFF: usize = 3;
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Values that may come from a file or a flag. `None` means unset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub kr: Option<f64>,
    pub samples: Option<usize>,
    pub m: Option<i64>,
    pub omega0_over_gamma: Option<f64>,
    pub cutoff: Option<i64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

impl Overrides {
    /// Fields set in `other` replace those in `self`.
    pub fn merged(self, other: Overrides) -> Overrides {
        Overrides {
            kr: other.kr.or(self.kr),
            samples: other.samples.or(self.samples),
            m: other.m.or(self.m),
            omega0_over_gamma: other.omega0_over_gamma.or(self.omega0_over_gamma),
            cutoff: other.cutoff.or(self.cutoff),
            tol: other.tol.or(self.tol),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kr: f64,
    pub samples: usize,
    pub m: i64,
    pub omega0_over_gamma: f64,
    pub cutoff: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Applies defaults and range checks. `default_format` depends on the
    /// subcommand.
    pub fn resolve(o: Overrides, default_format: Format) -> Result<Self, CliError> {
        let kr = o.kr.unwrap_or(DEFAULT_KR);
        if !(kr.is_finite() && kr >= photon_am::radial_fields::MIN_KR) {
            return Err(CliError::Invalid(format!(
                "kR must be at least {}, got {kr}",
                photon_am::radial_fields::MIN_KR
            )));
        }
        let samples = o.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples < 100 {
            return Err(CliError::Invalid(format!("samples must be at least 100, got {samples}")));
        }
        let m = o.m.unwrap_or(DEFAULT_M);
        if !(-1..=1).contains(&m) {
            return Err(CliError::Invalid(format!("m must be -1, 0 or 1, got {m}")));
        }
        let ratio = o.omega0_over_gamma.unwrap_or(DEFAULT_OMEGA0_OVER_GAMMA);
        if !(ratio.is_finite() && ratio >= photon_am::decay_dynamics::MIN_OMEGA0_OVER_GAMMA) {
            return Err(CliError::Invalid(format!(
                "omega0-over-gamma must be at least {}, got {ratio}",
                photon_am::decay_dynamics::MIN_OMEGA0_OVER_GAMMA
            )));
        }
        let cutoff = o.cutoff.unwrap_or(DEFAULT_CUTOFF as i64);
        if !(0..=8).contains(&cutoff) {
            return Err(CliError::Invalid(format!("cutoff must be between 0 and 8, got {cutoff}")));
        }
        let tol = o.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Invalid(format!("tol must be positive, got {tol}")));
        }
        let format = match o.format {
            None => default_format,
            Some(f) => {
                Format::parse(&f).ok_or_else(|| CliError::Invalid(format!("format must be csv or json, got {f:?}")))?
            }
        };
        Ok(RunConfig { kr, samples, m, omega0_over_gamma: ratio, cutoff: cutoff as usize, tol, out: o.out, format })
    }
}

pub fn load_config(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let bad = |msg: String| CliError::Config { line: line_no, message: msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| bad(format!("expected `key = value`, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(bad(format!("missing value for {key:?}")));
        }
        let num = |v: &str| v.parse::<f64>().map_err(|_| bad(format!("{key}: not a number: {v:?}")));
        let int = |v: &str| v.parse::<i64>().map_err(|_| bad(format!("{key}: not an integer: {v:?}")));
        match key.replace('_', "-").as_str() {
            "kR" | "kr" => o.kr = Some(num(value)?),
            "samples" => o.samples = Some(value.parse().map_err(|_| bad(format!("samples: not a count: {value:?}")))?),
            "m" => o.m = Some(int(value)?),
            "omega0-over-gamma" => o.omega0_over_gamma = Some(num(value)?),
            "cutoff" => o.cutoff = Some(int(value)?),
            "tol" => o.tol = Some(num(value)?),
            "out" => o.out = Some(PathBuf::from(value)),
            "format" => o.format = Some(value.to_string()),
            _ => return Err(bad(format!("unknown key {key:?}"))),
        }
    }
    Ok(o)
}
