//! JSON experiment configuration.

use std::path::Path;

use loctrace_core::FieldId;
use serde::{Deserialize, Serialize};

use crate::error::{RunError, RunResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub log_t_half_range: f64,
    pub n: usize,
    /// Snap the step so that `log(align_to)` is a whole number of steps.
    #[serde(default = "default_align")]
    pub align_to: Option<f64>,
}

fn default_align() -> Option<f64> {
    Some(2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunctionKind {
    GaussianBump,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFunctionConfig {
    pub kind: TestFunctionKind,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "default_width")]
    pub width: f64,
    #[serde(default = "default_support")]
    pub support_radius: f64,
}

fn default_width() -> f64 {
    0.25
}
fn default_support() -> f64 {
    1.5
}

/// Signed full-line grid for route C (ℝ only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteCConfig {
    pub n_half: usize,
    pub t_max: f64,
    #[serde(default = "default_route_c_defect")]
    pub defect_threshold: f64,
}

fn default_route_c_defect() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: String,
    pub json: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            csv: "sweep.csv".into(),
            json: "sweep.json".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub field: String,
    pub grid: GridConfig,
    pub test_function: TestFunctionConfig,
    pub lambdas: Vec<f64>,
    #[serde(default)]
    pub route_c: Option<RouteCConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ExperimentConfig {
    /// The standard bump swept over `Λ ∈ {2, 4, 8, 16, 32}`. On ℍ the tail
    /// bound only drops below the traces past `Λ ≈ 32`, so that sweep uses a
    /// wider grid and `Λ ∈ {64, …, 1024}`.
    pub fn default_for(field: FieldId) -> Self {
        let (half_range, n, lambdas) = match field {
            FieldId::R => (1e4f64.ln(), 2048, vec![2.0, 4.0, 8.0, 16.0, 32.0]),
            FieldId::C => (1e4f64.ln(), 1024, vec![2.0, 4.0, 8.0, 16.0, 32.0]),
            FieldId::H => (1e6f64.ln(), 2048, vec![64.0, 128.0, 256.0, 512.0, 1024.0]),
        };
        ExperimentConfig {
            field: field.name().into(),
            grid: GridConfig {
                log_t_half_range: half_range,
                n,
                align_to: Some(2.0),
            },
            test_function: TestFunctionConfig {
                kind: TestFunctionKind::GaussianBump,
                center: 0.0,
                width: 0.25,
                support_radius: 1.5,
            },
            lambdas,
            route_c: (field == FieldId::R).then_some(RouteCConfig {
                n_half: 2048,
                t_max: 70.0,
                defect_threshold: 1e-6,
            }),
            output: OutputConfig::default(),
        }
    }

    pub fn from_path(path: &Path) -> RunResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> RunResult<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| RunError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn field_id(&self) -> RunResult<FieldId> {
        FieldId::parse(&self.field)
            .ok_or_else(|| RunError::config(format!("unknown field '{}' (expected R, C or H)", self.field)))
    }

    pub fn validate(&self) -> RunResult<()> {
        let field = self.field_id()?;
        let g = &self.grid;
        if !(g.log_t_half_range > 0.0 && g.log_t_half_range.is_finite()) {
            return Err(RunError::config("grid.log_t_half_range must be positive"));
        }
        if g.n < 4 || !g.n.is_multiple_of(2) {
            return Err(RunError::config("grid.n must be even and at least 4"));
        }
        if let Some(a) = g.align_to {
            if !(a > 1.0) {
                return Err(RunError::config("grid.align_to must exceed 1"));
            }
        }
        let tf = &self.test_function;
        if tf.kind == TestFunctionKind::GaussianBump && !(tf.width > 0.0) {
            return Err(RunError::config("test_function.width must be positive"));
        }
        if !(tf.support_radius > 0.0) || tf.support_radius >= g.log_t_half_range {
            return Err(RunError::config("test_function.support_radius must lie inside the grid"));
        }
        if self.lambdas.is_empty() {
            return Err(RunError::config("lambdas must not be empty"));
        }
        if self.lambdas.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
            return Err(RunError::config("lambdas must be positive"));
        }
        if self.lambdas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(RunError::config("lambdas must be strictly ascending"));
        }
        // Λ² must stay inside the product grid, which spans |log z| ≤ 2L.
        let lam_max = *self.lambdas.last().unwrap();
        if lam_max.ln() >= g.log_t_half_range {
            return Err(RunError::config(format!(
                "largest cutoff {lam_max} puts Λ² beyond the grid (L = {})",
                g.log_t_half_range
            )));
        }
        if let Some(rc) = &self.route_c {
            if field != FieldId::R {
                return Err(RunError::config("route_c is only available for field R"));
            }
            if rc.n_half < 4 || !(rc.t_max > 1.0) || !(rc.defect_threshold > 0.0) {
                return Err(RunError::config("route_c needs n_half ≥ 4, t_max > 1 and a positive defect threshold"));
            }
        }
        if self.output.csv.is_empty() || self.output.json.is_empty() {
            return Err(RunError::config("output paths must not be empty"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        for f in FieldId::ALL {
            let c = ExperimentConfig::default_for(f);
            c.validate().unwrap();
            let text = serde_json::to_string(&c).unwrap();
            assert_eq!(ExperimentConfig::from_json(&text).unwrap(), c);
        }
    }

    #[test]
    fn schema_violations() {
        let good = serde_json::to_value(ExperimentConfig::default_for(FieldId::H)).unwrap();
        let cases: [(&str, serde_json::Value); 6] = [
            ("/field", "Q".into()),
            ("/grid/n", 7.into()),
            ("/lambdas", serde_json::json!([4.0, 2.0])),
            ("/lambdas", serde_json::json!([2.0, 1e9])),
            ("/test_function/width", (-1.0).into()),
            ("/route_c", serde_json::json!({"n_half": 64, "t_max": 10.0})),
        ];
        for (ptr, v) in cases {
            let mut bad = good.clone();
            *bad.pointer_mut(ptr).unwrap() = v;
            let err = ExperimentConfig::from_json(&bad.to_string()).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{ptr}");
        }
        let mut extra = good.clone();
        extra["surprise"] = 1.into();
        assert!(ExperimentConfig::from_json(&extra.to_string()).is_err());
        assert!(ExperimentConfig::from_json("{").is_err());
    }
}
