//! Run configuration: JSON file plus flag overrides.

use chiral_core::dynamics::{Formulation, Method};
use chiral_core::Params;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OutputSpec {
    pub path: String,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One simulation run, as stored on disk. Field names match the JSON
/// config format; command-line flags override file values.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub formulation: String,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_mass")]
    pub mass: f64,
    pub initial: Vec<f64>,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_method")]
    pub method: String,
    #[serde(default)]
    pub outputs: Vec<OutputSpec>,
}

fn default_lambda() -> f64 {
    1.0
}
fn default_mass() -> f64 {
    1.0
}
fn default_dt() -> f64 {
    1e-3
}
fn default_t_end() -> f64 {
    10.0
}
fn default_method() -> String {
    "rk4".into()
}

pub fn parse_formulation(name: &str) -> Result<Formulation, CliError> {
    Ok(match name {
        "canonical-dirac" | "canonical" | "canonical-bracket-dirac-h" => {
            Formulation::CanonicalBracketDiracH
        }
        "dirac-canonical" | "dirac" | "dirac-bracket-canonical-h" => {
            Formulation::DiracBracketCanonicalH
        }
        "darboux" | "darboux-canonical-h" => Formulation::DarbouxCanonicalH,
        "reduced" | "reduced-lie-poisson" => Formulation::ReducedLiePoisson,
        other => {
            return Err(CliError::usage(format!(
                "formulation: unknown value {other:?} (expected canonical-dirac, dirac-canonical, darboux, or reduced)"
            )))
        }
    })
}

pub fn formulation_name(form: Formulation) -> &'static str {
    match form {
        Formulation::CanonicalBracketDiracH => "canonical-dirac",
        Formulation::DiracBracketCanonicalH => "dirac-canonical",
        Formulation::DarbouxCanonicalH => "darboux",
        Formulation::ReducedLiePoisson => "reduced",
    }
}

pub fn parse_method(name: &str) -> Result<Method, CliError> {
    Ok(match name {
        "rk4" => Method::Rk4,
        "implicit-midpoint" | "midpoint" => Method::ImplicitMidpoint,
        other => {
            return Err(CliError::usage(format!(
                "method: unknown value {other:?} (expected rk4 or implicit-midpoint)"
            )))
        }
    })
}

/// A fully validated run, ready to hand to the integrator.
pub struct ResolvedRun {
    pub formulation: Formulation,
    pub params: Params,
    pub initial: Vec<f64>,
    pub dt: f64,
    pub t_end: f64,
    pub method: Method,
}

impl RunConfig {
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("config: cannot read {path}: {e}")))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("config: invalid JSON in {path}: {e}")))
    }

    pub fn resolve(&self) -> Result<ResolvedRun, CliError> {
        let formulation = parse_formulation(&self.formulation)?;
        let params = Params::new(self.lambda, self.mass)
            .map_err(|e| CliError::usage(format!("lambda/mass: {e}")))?;
        if self.initial.len() != formulation.dim() {
            return Err(CliError::usage(format!(
                "initial: expected {} coordinates for formulation {}, got {}",
                formulation.dim(),
                formulation_name(formulation),
                self.initial.len()
            )));
        }
        if !(self.dt > 0.0) || !(self.t_end > 0.0) || self.dt > self.t_end {
            return Err(CliError::usage("dt/t_end: need 0 < dt <= t_end"));
        }
        Ok(ResolvedRun {
            formulation,
            params,
            initial: self.initial.clone(),
            dt: self.dt,
            t_end: self.t_end,
            method: parse_method(&self.method)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip_is_semantically_identical() {
        let cfg = RunConfig {
            formulation: "reduced".into(),
            lambda: 1.5,
            mass: 0.5,
            initial: vec![-2.0, 2.0, 0.0, 1.0],
            dt: 1e-3,
            t_end: 10.0,
            method: "rk4".into(),
            outputs: vec![OutputSpec {
                path: "out.csv".into(),
                format: OutputFormat::Csv,
            }],
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn dimension_mismatch_names_initial() {
        let cfg = RunConfig {
            formulation: "reduced".into(),
            lambda: 1.0,
            mass: 1.0,
            initial: vec![0.0; 8],
            dt: 1e-3,
            t_end: 1.0,
            method: "rk4".into(),
            outputs: vec![],
        };
        let err = cfg.resolve().unwrap_err();
        assert_eq!(err.code, 2);
        assert!(err.message.contains("initial"));
    }
}
