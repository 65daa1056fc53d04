//! Run configuration: flags override the `key = value` config file, which
//! overrides the defaults.

use crate::report::Format;
use crate::CliError;
use kleinian_selberg::arith::Group;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub group: Group,
    /// `trivial`, a built-in name, or a path to a representation file.
    pub rep: String,
    pub height: i64,
    pub norm_bound: f64,
    pub a: f64,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub cache_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            group: Group::Picard,
            rep: "trivial".into(),
            height: 12,
            norm_bound: 30.0,
            a: 10.0,
            tol: 1e-10,
            out: None,
            format: Format::Text,
            cache_dir: PathBuf::from(".kselberg-cache"),
        }
    }
}

/// Values given on the command line or in a config file, unset ones `None`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub group: Option<String>,
    pub rep: Option<String>,
    pub height: Option<String>,
    pub norm_bound: Option<String>,
    pub a: Option<String>,
    pub tol: Option<String>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub cache_dir: Option<String>,
}

impl Overrides {
    /// Parse a `key = value` file; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Overrides, CliError> {
        let mut o = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected 'key = value'", i + 1)))?;
            let v = Some(v.trim().to_string());
            match k.trim().replace('_', "-").as_str() {
                "group" => o.group = v,
                "rep" => o.rep = v,
                "height" => o.height = v,
                "norm-bound" => o.norm_bound = v,
                "A" | "a" => o.a = v,
                "tol" => o.tol = v,
                "out" => o.out = v,
                "format" => o.format = v,
                "cache-dir" => o.cache_dir = v,
                other => return Err(CliError::Usage(format!("config line {}: unknown key '{other}'", i + 1))),
            }
        }
        Ok(o)
    }

    pub fn read_file(path: &Path) -> Result<Overrides, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Overrides::parse_file(&text)
    }

    /// `self` where set, otherwise `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            group: self.group.or(lower.group),
            rep: self.rep.or(lower.rep),
            height: self.height.or(lower.height),
            norm_bound: self.norm_bound.or(lower.norm_bound),
            a: self.a.or(lower.a),
            tol: self.tol.or(lower.tol),
            out: self.out.or(lower.out),
            format: self.format.or(lower.format),
            cache_dir: self.cache_dir.or(lower.cache_dir),
        }
    }

    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let d = RunConfig::default();
        let positive = |name: &str, v: Option<String>, def: f64| -> Result<f64, CliError> {
            let Some(v) = v else { return Ok(def) };
            match v.parse::<f64>() {
                Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
                _ => Err(CliError::Usage(format!("{name} must be a positive number, got '{v}'"))),
            }
        };
        let group = match self.group {
            Some(g) => g.parse::<Group>().map_err(|e| CliError::Usage(e.to_string()))?,
            None => d.group,
        };
        let height = match self.height {
            Some(h) => match h.parse::<i64>() {
                Ok(x) if x >= 1 => x,
                _ => return Err(CliError::Usage(format!("height must be a positive integer, got '{h}'"))),
            },
            None => d.height,
        };
        let norm_bound = positive("norm-bound", self.norm_bound, d.norm_bound)?;
        if norm_bound <= 1.0 {
            return Err(CliError::Usage(format!("norm-bound must exceed 1, got {norm_bound}")));
        }
        Ok(RunConfig {
            group,
            rep: self.rep.unwrap_or(d.rep),
            height,
            norm_bound,
            a: positive("A", self.a, d.a)?,
            tol: positive("tol", self.tol, d.tol)?,
            out: self.out.map(PathBuf::from),
            format: match self.format {
                Some(f) => f.parse().map_err(CliError::Usage)?,
                None => d.format,
            },
            cache_dir: self.cache_dir.map(PathBuf::from).unwrap_or(d.cache_dir),
        })
    }
}
