//! Solve, predict and check reports in text or JSON.
//!
//! Every float is rounded to 15 significant digits before it is printed, so
//! identical inputs give byte-identical output.

use std::fmt::Write as _;

use conic_core::conic::classify;
use conic_core::oracle::{CertificationReport, CheckStatus};
use conic_core::{CountPrediction, SolutionSet, Tolerances};
use serde::Serialize;

use crate::config::Format;

/// `v` rounded to 15 significant digits.
pub fn sig15(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    if !v.is_finite() {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}

/// Text form of an already rounded value; exponent notation outside
/// `[1e-4, 1e15)`.
fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn sig15_all<const N: usize>(v: [f64; N]) -> [f64; N] {
    v.map(sig15)
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictionReport {
    pub real: usize,
    pub complex: usize,
    pub rule: String,
}

impl From<&CountPrediction> for PredictionReport {
    fn from(p: &CountPrediction) -> Self {
        Self {
            real: p.real,
            complex: p.complex,
            rule: p.rule.describe(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConicReport {
    /// `(a, b, c, d, e, f)` of `ax² + bxy + cy² + dx + ey + f = 0`, unit norm,
    /// largest entry positive.
    pub coefficients: [f64; 6],
    pub class: &'static str,
    pub s: Option<f64>,
    pub t: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub discriminant: Option<f64>,
    pub pencil_eigenvalues: Option<[f64; 3]>,
    pub double_root: bool,
    pub branch: Option<String>,
    pub max_incidence_residual: f64,
    pub max_tangency_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub solver: String,
    pub case: String,
    pub real_count: usize,
    pub complex_count: usize,
    pub prediction: PredictionReport,
    pub conics: Vec<ConicReport>,
    pub diagnostics: DiagnosticsReport,
}

impl SolveReport {
    pub fn new(
        solver: &str,
        out: &SolutionSet,
        prediction: &CountPrediction,
        tol: &Tolerances,
    ) -> Self {
        let d = &out.diagnostics;
        let conics = out
            .real_conics
            .iter()
            .enumerate()
            .map(|(i, c)| ConicReport {
                coefficients: sig15_all(c.normalized_coefficients()),
                class: classify(c, tol.rank).name(),
                s: d.s_values.get(i).copied().map(sig15),
                t: d.t_values.get(i).copied().map(sig15),
            })
            .collect();
        Self {
            solver: solver.to_string(),
            case: out.case_label.clone(),
            real_count: out.real_count(),
            complex_count: out.complex_count,
            prediction: prediction.into(),
            conics,
            diagnostics: DiagnosticsReport {
                discriminant: d.discriminant.map(sig15),
                pencil_eigenvalues: d.pencil_eigenvalues.map(sig15_all),
                double_root: d.double_root,
                branch: d.branch.clone(),
                max_incidence_residual: sig15(d.max_incidence_residual),
                max_tangency_residual: sig15(d.max_tangency_residual),
            },
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "solver: {}", self.solver);
        let _ = writeln!(s, "case: {}", self.case);
        let _ = writeln!(
            s,
            "solutions: {} real, {} complex",
            self.real_count, self.complex_count
        );
        let p = &self.prediction;
        let _ = writeln!(
            s,
            "prediction: {} real, {} complex, rule: {}",
            p.real, p.complex, p.rule
        );
        for (i, c) in self.conics.iter().enumerate() {
            let k = c.coefficients.map(num).join(", ");
            let _ = write!(s, "conic {}: [{k}] {}", i + 1, c.class);
            if let Some(v) = c.s {
                let _ = write!(s, " s={}", num(v));
            }
            if let Some(v) = c.t {
                let _ = write!(s, " t={}", num(v));
            }
            s.push('\n');
        }
        let d = &self.diagnostics;
        if let Some(v) = d.discriminant {
            let _ = writeln!(s, "discriminant: {}", num(v));
        }
        if let Some(ev) = d.pencil_eigenvalues {
            let _ = writeln!(
                s,
                "pencil eigenvalues: {}, {}, {}",
                num(ev[0]),
                num(ev[1]),
                num(ev[2])
            );
        }
        if d.double_root {
            let _ = writeln!(s, "double root reported once");
        }
        if let Some(b) = &d.branch {
            let _ = writeln!(s, "branch: {b}");
        }
        let _ = writeln!(
            s,
            "max residuals: incidence {}, tangency {}",
            num(d.max_incidence_residual),
            num(d.max_tangency_residual)
        );
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PredictReport {
    pub solver: String,
    pub real: usize,
    pub complex: usize,
    pub rule: String,
}

impl PredictReport {
    pub fn new(solver: &str, p: &CountPrediction) -> Self {
        Self {
            solver: solver.to_string(),
            real: p.real,
            complex: p.complex,
            rule: p.rule.describe(),
        }
    }

    fn text(&self) -> String {
        format!(
            "{} real, {} complex, rule: {}\n",
            self.real, self.complex, self.rule
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(cert: &CertificationReport) -> Self {
        let mut report = Self {
            passed: true,
            checks: Vec::new(),
        };
        for c in &cert.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Skipped => "skipped",
            };
            report.push(&c.name, status, c.value, c.threshold, &c.detail);
        }
        report
    }

    pub fn push(
        &mut self,
        name: &str,
        status: &'static str,
        value: f64,
        threshold: f64,
        detail: &str,
    ) {
        self.passed &= status != "fail";
        self.checks.push(CheckEntry {
            name: name.to_string(),
            status,
            value: sig15(value),
            threshold: sig15(threshold),
            detail: detail.to_string(),
        });
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == "fail")
            .map(|c| c.name.as_str())
            .collect()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = write!(
                s,
                "{:7} {}: {} (threshold {})",
                c.status,
                c.name,
                num(c.value),
                num(c.threshold)
            );
            if !c.detail.is_empty() {
                let _ = write!(s, " {}", c.detail);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

/// One line of a batch run.
#[derive(Debug, Clone, Serialize)]
pub struct BatchEntry {
    pub file: String,
    pub exit_code: i32,
    pub real: Option<usize>,
    pub complex: Option<usize>,
    pub predicted_real: Option<usize>,
    pub certified: Option<bool>,
    pub error: Option<String>,
}

impl BatchEntry {
    fn text(&self) -> String {
        match &self.error {
            Some(e) => format!("{}: error (exit {}): {e}\n", self.file, self.exit_code),
            None => format!(
                "{}: {} real, {} complex, predicted {} real, {}\n",
                self.file,
                self.real.unwrap_or(0),
                self.complex.unwrap_or(0),
                self.predicted_real.unwrap_or(0),
                if self.certified == Some(true) {
                    "certified"
                } else {
                    "certification failed"
                }
            ),
        }
    }
}

pub enum Report {
    Solve(SolveReport),
    Predict(PredictReport),
    Check(SolveReport, CheckReport),
    Batch(Vec<BatchEntry>),
}

#[derive(Serialize)]
struct CheckJson<'a> {
    solve: &'a SolveReport,
    certification: &'a CheckReport,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => match self {
                Self::Solve(r) => r.text(),
                Self::Predict(r) => r.text(),
                Self::Check(solve, check) => format!("{}{}", solve.text(), check.text()),
                Self::Batch(entries) => entries.iter().map(BatchEntry::text).collect(),
            },
            Format::Json => {
                let json = match self {
                    Self::Solve(r) => serde_json::to_string_pretty(r),
                    Self::Predict(r) => serde_json::to_string_pretty(r),
                    Self::Check(solve, certification) => serde_json::to_string_pretty(&CheckJson {
                        solve,
                        certification,
                    }),
                    Self::Batch(entries) => serde_json::to_string_pretty(entries),
                };
                json.expect("reports hold only serializable values") + "\n"
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_to_fifteen_digits() {
        assert_eq!(sig15(0.1 + 0.2), 0.3);
        assert_eq!(sig15(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(sig15(-2.0), -2.0);
        assert_eq!(sig15(-0.0).to_string(), "0");
        assert!(sig15(f64::NAN).is_nan());
        assert_eq!(sig15(2f64.sqrt() * 1e18), 1.4142135623731e18);
    }

    #[test]
    fn text_numbers() {
        assert_eq!(num(0.25), "0.25");
        assert_eq!(num(-3.0), "-3");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(sig15(1.2239582965306912e-19)), "1.22395829653069e-19");
        assert_eq!(num(2e20), "2e20");
    }

    #[test]
    fn check_report_tracks_failures() {
        let mut r = CheckReport::new(&CertificationReport::default());
        assert!(r.passed);
        r.push("a", "pass", 0.0, 1.0, "");
        r.push("b", "skipped", 0.0, 1.0, "");
        assert!(r.passed);
        r.push("c", "fail", 2.0, 1.0, "too big");
        assert!(!r.passed);
        assert_eq!(r.failed_names(), ["c"]);
        assert!(Report::Check(
            SolveReport {
                solver: "5p".into(),
                case: "5p".into(),
                real_count: 0,
                complex_count: 0,
                prediction: PredictionReport {
                    real: 0,
                    complex: 0,
                    rule: String::new()
                },
                conics: Vec::new(),
                diagnostics: DiagnosticsReport {
                    discriminant: None,
                    pencil_eigenvalues: None,
                    double_root: false,
                    branch: None,
                    max_incidence_residual: 0.0,
                    max_tangency_residual: 0.0,
                },
            },
            r
        )
        .render(Format::Text)
        .ends_with("FAIL\n"));
    }
}
