use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use nctv_cli::{run_suite, GroupSelect, SuiteConfig, ThetaSpec};

/// Verification suites for twisted group algebras of Z² ⋊ F: exact
/// relation/projection/trace checks, K-group ranks, and numerical
/// residuals of the module transforms. Exit status is nonzero iff any
/// check fails.
#[derive(Parser, Debug)]
#[command(name = "nctv", version, about)]
struct Cli {
    /// Suite to run: symbolic | ktheory | walters | fiber | trace-points
    #[arg(long)]
    suite: String,

    /// Group selector: all | z2 | z3 | z4 | z6
    #[arg(long, default_value = "all")]
    group: String,

    /// θ values (repeatable): "formal", "p/q", or a float in (0, 1]
    #[arg(long = "theta")]
    thetas: Vec<String>,

    /// Grid points (power of two ≥ 256)
    #[arg(long = "grid-n", default_value_t = 2048)]
    grid_n: usize,

    /// Grid half-width (≥ 8)
    #[arg(long = "grid-l", default_value_t = 12.0)]
    grid_l: f64,

    /// Scale factor applied to every numeric tolerance
    #[arg(long = "tol", default_value_t = 1.0)]
    tol: f64,

    /// Worker threads (default: NCTV_DEFAULT_JOBS or all cores)
    #[arg(long)]
    jobs: Option<usize>,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Output format: json | md | csv (csv only for trace-points)
    #[arg(long, default_value = "json")]
    format: String,

    /// Lattice bound for trace-points export
    #[arg(long, default_value_t = 2)]
    bound: i64,

    /// Also write a CSV of sample vectors (base Gaussian and its
    /// transforms) at the first θ, for plotting
    #[arg(long = "dump-samples")]
    dump_samples: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    let groups = GroupSelect::parse(&cli.group)?;
    let thetas: Vec<ThetaSpec> = cli
        .thetas
        .iter()
        .map(|s| ThetaSpec::parse(s))
        .collect::<Result<_, _>>()?;
    let jobs = cli.jobs.unwrap_or_else(nctv_cli::default_jobs);

    if cli.suite == "trace-points" {
        return run_trace_points(&cli, groups, &thetas);
    }

    let config = SuiteConfig {
        suite: cli.suite.clone(),
        groups,
        thetas,
        grid_n: cli.grid_n,
        grid_l: cli.grid_l,
        tol_scale: cli.tol,
        jobs,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())?;
    let report = pool.install(|| run_suite(&config))?;

    if let Some(path) = &cli.dump_samples {
        let theta = config.numeric_thetas()?[0];
        let csv = nctv_cli::trace_points::sample_dump(theta, cli.grid_n, cli.grid_l)?;
        std::fs::write(path, csv).map_err(|e| e.to_string())?;
    }

    let rendered = match cli.format.as_str() {
        "json" => report.to_json(),
        "md" => report.to_markdown(),
        other => return Err(format!("format '{other}' not available for suite reports")),
    };
    emit(&cli.out, &rendered)?;
    eprintln!(
        "suite {}: {} checks, status {}, {} ms",
        report.suite,
        report.checks.len(),
        if report.passed() { "pass" } else { "FAIL" },
        report.wall_clock_ms
    );
    Ok(report.passed())
}

fn run_trace_points(
    cli: &Cli,
    groups: GroupSelect,
    thetas: &[ThetaSpec],
) -> Result<bool, String> {
    if cli.format != "csv" {
        return Err("trace-points exports CSV; pass --format csv".into());
    }
    let k = match groups {
        GroupSelect::One(k) => k,
        GroupSelect::All => return Err("trace-points needs a single --group".into()),
    };
    let theta = thetas
        .first()
        .and_then(|t| t.as_float())
        .ok_or("trace-points needs one numeric --theta in (0, 1)")?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(format!("theta {theta} outside (0, 1)"));
    }
    let pts = nctv_cli::trace_points::trace_points(k, theta, cli.bound);
    emit(&cli.out, &nctv_cli::trace_points::to_csv(&pts))?;
    Ok(true)
}

fn emit(out: &Option<std::path::PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| e.to_string()),
    }
}
