//! JSON configuration files.
//!
//! ```json
//! {
//!   "points": [[0, 1], [1, 0]],
//!   "lines": [[1, 0, -2], [0, 1, -2], [1, 1, 3]],
//!   "options": { "tolerance": 1e-10, "format": "json", "viewport": [-3, -3, 3, 3] },
//!   "expected": { "real": 1, "conics": [[1, 0, 1, 0, 0, -1]] }
//! }
//! ```
//!
//! `options` and `expected` are optional. `expected` holds golden values that
//! `check` compares against.

use std::path::Path;

use conic_core::{HomogeneousPoint, MinimalConfiguration, ProjectiveLine};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub tolerance: Option<f64>,
    pub format: Option<Format>,
    pub viewport: Option<[f64; 4]>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub real: Option<usize>,
    pub complex: Option<usize>,
    /// Conic 6-vectors `(a, b, c, d, e, f)` of `ax² + bxy + cy² + dx + ey + f`,
    /// at any scale.
    #[serde(default)]
    pub conics: Vec<[f64; 6]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub lines: Vec<[f64; 3]>,
    #[serde(default)]
    pub options: Options,
    pub expected: Option<Expected>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let numbers = self
            .points
            .iter()
            .flatten()
            .chain(self.lines.iter().flatten())
            .chain(self.options.tolerance.iter())
            .chain(self.options.viewport.iter().flatten());
        if numbers.into_iter().any(|v| !v.is_finite()) {
            return Err(CliError::Parse("all numbers must be finite".into()));
        }
        if let Some(t) = self.options.tolerance {
            if t <= 0.0 {
                return Err(CliError::Parse("tolerance must be positive".into()));
            }
        }
        if let Some([x0, y0, x1, y1]) = self.options.viewport {
            if x1 <= x0 || y1 <= y0 {
                return Err(CliError::Parse(
                    "viewport must be xmin,ymin,xmax,ymax with min < max".into(),
                ));
            }
        }
        for (i, l) in self.lines.iter().enumerate() {
            if l.iter().all(|&v| v == 0.0) {
                return Err(CliError::Parse(format!(
                    "line #{} has all coefficients zero",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<HomogeneousPoint> {
        self.points
            .iter()
            .map(|&[x, y]| HomogeneousPoint::new(x, y))
            .collect()
    }

    pub fn lines(&self) -> Vec<ProjectiveLine> {
        self.lines
            .iter()
            .map(|&[a, b, c]| ProjectiveLine::new(a, b, c).expect("validated line"))
            .collect()
    }

    pub fn configuration(&self) -> Result<MinimalConfiguration, CliError> {
        Ok(MinimalConfiguration::from_parts(
            self.points(),
            self.lines(),
        )?)
    }
}

/// Parses `xmin,ymin,xmax,ymax`.
pub fn parse_viewport(s: &str) -> Result<[f64; 4], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        &[x0, y0, x1, y1] if x0 < x1 && y0 < y1 && v.iter().all(|x| x.is_finite()) => {
            Ok([x0, y0, x1, y1])
        }
        [_, _, _, _] => Err("need xmin < xmax and ymin < ymax".into()),
        _ => Err("expected four comma-separated numbers".into()),
    }
}
