//! Report schema. JSON output is deterministic: fixed field order,
//! ordered check lists, and no timing data in the serialized form
//! (wall-clock goes to stderr and the Markdown footer only).

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// Stable hierarchical id, e.g. "projections/z4/q1-trace".
    pub id: String,
    /// Stable reference tag tying the check to its source table.
    pub reference: String,
    pub status: Status,
    pub measured: serde_json::Value,
    pub expected: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn exact(id: impl Into<String>, reference: impl Into<String>, ok: bool) -> Self {
        Check {
            id: id.into(),
            reference: reference.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: serde_json::Value::String(if ok { "holds" } else { "violated" }.into()),
            expected: serde_json::Value::String("holds".into()),
            tolerance: None,
        }
    }

    pub fn exact_value(
        id: impl Into<String>,
        reference: impl Into<String>,
        measured: impl Into<String>,
        expected: impl Into<String>,
    ) -> Self {
        let m: String = measured.into();
        let e: String = expected.into();
        Check {
            id: id.into(),
            reference: reference.into(),
            status: if m == e { Status::Pass } else { Status::Fail },
            measured: serde_json::Value::String(m),
            expected: serde_json::Value::String(e),
            tolerance: None,
        }
    }

    pub fn residual(
        id: impl Into<String>,
        reference: impl Into<String>,
        value: f64,
        tolerance: f64,
    ) -> Self {
        Check {
            id: id.into(),
            reference: reference.into(),
            status: if value < tolerance { Status::Pass } else { Status::Fail },
            measured: json_f64(value),
            expected: serde_json::Value::String(format!("< {tolerance:e}")),
            tolerance: Some(tolerance),
        }
    }

    pub fn count(
        id: impl Into<String>,
        reference: impl Into<String>,
        measured: u64,
        expected: u64,
    ) -> Self {
        Check {
            id: id.into(),
            reference: reference.into(),
            status: if measured == expected { Status::Pass } else { Status::Fail },
            measured: serde_json::Value::from(measured),
            expected: serde_json::Value::from(expected),
            tolerance: None,
        }
    }
}

fn json_f64(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or_else(|| serde_json::Value::String(format!("{v}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub groups: Vec<String>,
    pub thetas: Vec<String>,
    pub grid_n: usize,
    pub grid_l: f64,
    pub tol_scale: f64,
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub status: Status,
    #[serde(skip)]
    pub wall_clock_ms: u128,
}

impl Report {
    pub fn new(suite: &str, config: ConfigEcho, checks: Vec<Check>, wall_clock_ms: u128) -> Self {
        let status = if checks.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report { schema: SCHEMA_VERSION, suite: suite.into(), config, checks, status, wall_clock_ms }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Markdown rendering, derived from the JSON values field by field.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# suite `{}` — {}\n\n", self.suite, status_str(self.status)));
        out.push_str(&format!(
            "groups: {} | thetas: {} | grid: N={}, L={} | jobs: {}\n\n",
            self.config.groups.join(","),
            self.config.thetas.join(","),
            self.config.grid_n,
            self.config.grid_l,
            self.config.jobs
        ));
        out.push_str("| check | reference | status | measured | expected |\n");
        out.push_str("|---|---|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                c.id,
                c.reference,
                status_str(c.status),
                c.measured,
                c.expected
            ));
        }
        out.push_str(&format!(
            "\n{} checks, {} failed — wall clock {} ms\n",
            self.checks.len(),
            self.checks.iter().filter(|c| c.status == Status::Fail).count(),
            self.wall_clock_ms
        ));
        out
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
    }
}
