//! Batch verification suites over the exact and numerical layers,
//! with deterministic machine-readable reports.

pub mod report;
pub mod suites;
pub mod trace_points;

use nctv_core::coeff::Rat;

pub use report::{Check, ConfigEcho, Report, Status};

/// Which groups a suite runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSelect {
    All,
    One(u64),
}

impl GroupSelect {
    pub fn orders(&self) -> Vec<u64> {
        match self {
            GroupSelect::All => vec![2, 3, 4, 6],
            GroupSelect::One(k) => vec![*k],
        }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(GroupSelect::All),
            "z2" | "2" => Ok(GroupSelect::One(2)),
            "z3" | "3" => Ok(GroupSelect::One(3)),
            "z4" | "4" => Ok(GroupSelect::One(4)),
            "z6" | "6" => Ok(GroupSelect::One(6)),
            other => Err(format!("unknown group selector '{other}'")),
        }
    }
}

/// One θ value as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaSpec {
    Formal,
    Rational(i64, i64),
    Float(f64),
}

impl ThetaSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        if s == "formal" {
            return Ok(ThetaSpec::Formal);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("bad rational '{s}'"))?;
            if q == 0 {
                return Err("zero denominator".into());
            }
            return Ok(ThetaSpec::Rational(p, q));
        }
        let v: f64 = s.parse().map_err(|_| format!("bad theta '{s}'"))?;
        Ok(ThetaSpec::Float(v))
    }

    /// Numeric value for the floating-point suites.
    pub fn as_float(&self) -> Option<f64> {
        match self {
            ThetaSpec::Formal => None,
            ThetaSpec::Rational(p, q) => Some(*p as f64 / *q as f64),
            ThetaSpec::Float(v) => Some(*v),
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            ThetaSpec::Rational(p, q) => Some(nctv_core::coeff::rat(*p, *q)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ThetaSpec::Formal => "formal".into(),
            ThetaSpec::Rational(p, q) => format!("{p}/{q}"),
            ThetaSpec::Float(v) => format!("{v}"),
        }
    }
}

/// Full configuration of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub groups: GroupSelect,
    pub thetas: Vec<ThetaSpec>,
    pub grid_n: usize,
    pub grid_l: f64,
    /// Multiplier applied to every numeric tolerance.
    pub tol_scale: f64,
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.into(),
            groups: GroupSelect::All,
            thetas: Vec::new(),
            grid_n: 2048,
            grid_l: 12.0,
            tol_scale: 1.0,
            jobs: default_jobs(),
        }
    }

    /// θ values for the numeric suites; defaults to the four pinned
    /// fibers when none are given.
    pub fn numeric_thetas(&self) -> Result<Vec<f64>, String> {
        if self.thetas.is_empty() {
            return Ok(vec![0.37, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.93]);
        }
        self.thetas
            .iter()
            .map(|t| {
                let v = t
                    .as_float()
                    .ok_or_else(|| "numeric suite cannot run at formal theta".to_string())?;
                if v > 0.0 && v <= 1.0 {
                    Ok(v)
                } else {
                    Err(format!("theta {v} outside (0, 1]"))
                }
            })
            .collect()
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            suite: self.suite.clone(),
            groups: self
                .groups
                .orders()
                .iter()
                .map(|k| format!("Z{k}"))
                .collect(),
            thetas: if self.thetas.is_empty() {
                vec!["default".into()]
            } else {
                self.thetas.iter().map(|t| t.label()).collect()
            },
            grid_n: self.grid_n,
            grid_l: self.grid_l,
            tol_scale: self.tol_scale,
            jobs: self.jobs,
        }
    }
}

pub fn default_jobs() -> usize {
    std::env::var("NCTV_DEFAULT_JOBS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Runs the named suite and assembles its report.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, String> {
    let start = std::time::Instant::now();
    let checks = match config.suite.as_str() {
        "symbolic" => suites::symbolic(config)?,
        "ktheory" => suites::ktheory(config)?,
        "walters" => suites::walters(config)?,
        "fiber" => suites::fiber(config)?,
        other => return Err(format!("unknown suite '{other}'")),
    };
    Ok(Report::new(
        &config.suite,
        config.echo(),
        checks,
        start.elapsed().as_millis(),
    ))
}
