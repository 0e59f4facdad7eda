//! The `esslab` command line: argument parsing, experiment dispatch and
//! the CSV/JSON/plot-data writers.
//!
//! Exit codes: 0 on success, 2 on a configuration error, 3 when an
//! experiment or an output write fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::distributions::DistributionSpec;
use crate::experiments::{
    chen_stein_from_run, estimate_gamma_prob, estimate_joint_gamma, estimate_mu,
    existence_experiment, fu_curve, hull_experiment, with_threads, EssRun, TrialPlan,
};
use crate::stats::SummaryStats;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Grid resolution used by `fu` for the CDF of `U`.
pub const FU_GRID_POINTS: usize = 2001;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("runtime failure: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// ESS counts per random game: mean S1, mean S2, existence.
    Ess,
    /// Hull vertex statistics of random point samples.
    Hull,
    /// Direct frequency of the two-point event and its joint version.
    Gamma,
    /// Poisson approximation of the S2 law with its Chen-Stein bound.
    Chenstein,
    /// Distribution of U over random point pairs.
    Fu,
    /// Existence probabilities of pure, two-point and low-support ESS.
    Exist,
    /// Mean number of two-point ESS across a list of sizes.
    Sweep,
}

#[derive(Debug, Parser)]
#[command(name = "esslab", version, about = "ESS and random polygon experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Law grammar, comma-separated for several: exp, normal, uniform,
    /// weibull:<a>, pareto:<a>, cauchy, lognormal, logistic, expexp, sym(<base>)
    #[arg(long, global = true, value_delimiter = ',', default_value = "uniform")]
    pub dist: Vec<String>,
    /// Number of strategies or points; comma-separated list allowed.
    #[arg(long, global = true, value_delimiter = ',', default_value = "10")]
    pub n: Vec<usize>,
    /// Trials per cell (point pairs for `fu`).
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: usize,
    /// Master seed; required.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest ESS support size counted (1..=3).
    #[arg(long, global = true, default_value_t = 2)]
    pub max_support: usize,
    /// Results file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker cap; results do not depend on it.
    #[arg(long, global = true, env = "ESSLAB_THREADS")]
    pub threads: Option<usize>,
    /// Also write long-format plot data to this path.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub dists: Vec<DistributionSpec>,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub max_support: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
    pub plot: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let dists = cli
            .dist
            .iter()
            .map(|d| d.parse::<DistributionSpec>().map_err(|e| CliError::Config(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let seed = cli
            .seed
            .ok_or_else(|| CliError::Config("--seed is required".into()))?;
        if cli.trials == 0 {
            return Err(CliError::Config("--trials must be >= 1".into()));
        }
        if !(1..=3).contains(&cli.max_support) {
            return Err(CliError::Config(format!(
                "--max-support must be 1, 2 or 3, got {}",
                cli.max_support
            )));
        }
        if cli.threads == Some(0) {
            return Err(CliError::Config("--threads must be >= 1".into()));
        }
        let min_n = match cli.command {
            Command::Chenstein | Command::Fu => 3,
            _ => 2,
        };
        if let Some(bad) = cli.n.iter().find(|&&n| n < min_n) {
            return Err(CliError::Config(format!(
                "--n {bad}: {:?} needs n >= {min_n}",
                cli.command
            )));
        }
        if cli.command == Command::Fu && cli.trials < 1000 {
            return Err(CliError::Config(format!(
                "--trials {}: fu needs at least 1000 pairs",
                cli.trials
            )));
        }
        Ok(Self {
            command: cli.command,
            dists,
            ns: cli.n,
            trials: cli.trials,
            seed,
            max_support: cli.max_support,
            out: cli.out,
            format: cli.format,
            threads: cli.threads,
            plot: cli.plot,
        })
    }
}

/// One statistic with its 95% interval, as written to plot data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub dist: String,
    pub n: usize,
    pub statistic: String,
    pub value: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Results of one (dist, n) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultCell {
    pub seed: u64,
    pub dist: String,
    pub n: usize,
    pub trials: usize,
    /// Command-specific columns after the four key columns, in order.
    /// `None` is written as an empty CSV field or JSON null.
    pub columns: Vec<(String, Option<f64>)>,
    /// Statistics exported as plot data: (name, value, ci_lo, ci_hi).
    pub statistics: Vec<(String, f64, f64, f64)>,
}

impl ResultCell {
    fn new(plan: &TrialPlan, dist: &DistributionSpec) -> Self {
        Self {
            seed: plan.master_seed,
            dist: dist.to_string(),
            n: plan.n,
            trials: plan.trials,
            columns: Vec::new(),
            statistics: Vec::new(),
        }
    }

    fn col(&mut self, name: &str, value: impl Into<Option<f64>>) -> &mut Self {
        self.columns.push((name.to_string(), value.into()));
        self
    }

    fn stat(&mut self, name: &str, s: &SummaryStats) -> &mut Self {
        self.statistics
            .push((name.to_string(), s.mean, s.ci_lo, s.ci_hi));
        self
    }

    fn point(&mut self, name: &str, value: f64) -> &mut Self {
        self.statistics.push((name.to_string(), value, value, value));
        self
    }

    fn summary(&self) -> String {
        let mut line = format!("{} n={} trials={}", self.dist, self.n, self.trials);
        for (k, v) in &self.columns {
            match v {
                Some(v) => write!(line, " {k}={v:.6}").unwrap(),
                None => write!(line, " {k}=NA").unwrap(),
            }
        }
        line
    }
}

fn run_cell(cfg: &RunConfig, dist: &DistributionSpec, n: usize) -> crate::Result<ResultCell> {
    let plan = TrialPlan::new(*dist, n, cfg.trials, cfg.seed)?.with_max_support(cfg.max_support)?;
    let mut cell = ResultCell::new(&plan, dist);
    match cfg.command {
        Command::Ess => {
            let run = EssRun::run(&TrialPlan {
                max_support: cfg.max_support.max(2),
                ..plan
            })?;
            let (s1, s2) = (run.mean_s(1), run.mean_s(2));
            let le2 = run.existence().p_le2;
            cell.col("mean_S1", s1.mean)
                .col("mean_S2", s2.mean)
                .col("stderr_S2", s2.stderr)
                .col("P_exist_le2", le2.mean)
                .stat("mean_S1", &s1)
                .stat("mean_S2", &s2)
                .stat("P_exist_le2", &le2);
            if cfg.max_support == 3 {
                let s3 = run.mean_s(3);
                cell.col("mean_S3", s3.mean).stat("mean_S3", &s3);
            }
        }
        Command::Hull => {
            let h = hull_experiment(&plan)?;
            cell.col("E_V", h.e_v.mean)
                .col("stderr_V", h.e_v.stderr)
                .col("E_V0", h.e_v0.mean)
                .col("stderr_V0", h.e_v0.stderr)
                .col("P_V0_zero", h.p_v0_zero.mean)
                .col("P_V_eq_4", h.p_v_eq_4.mean)
                .stat("E_V", &h.e_v)
                .stat("E_V0", &h.e_v0)
                .stat("P_V0_zero", &h.p_v0_zero)
                .stat("P_V_eq_4", &h.p_v_eq_4);
        }
        Command::Gamma => {
            let g = estimate_gamma_prob(&plan)?;
            let joint = if n >= 3 {
                Some(estimate_joint_gamma(&plan)?)
            } else {
                None
            };
            cell.col("P_gamma", g.mean)
                .col("stderr_gamma", g.stderr)
                .col("P_joint", joint.map(|j| j.mean))
                .col("stderr_joint", joint.map(|j| j.stderr))
                .stat("P_gamma", &g);
            if let Some(j) = joint {
                cell.stat("P_joint", &j);
            }
        }
        Command::Chenstein => {
            let est = chen_stein_from_run(&EssRun::run(&TrialPlan {
                max_support: 2,
                ..plan
            })?)?;
            let r = est.report;
            cell.col("lambda", r.lambda)
                .col("b1", r.b1)
                .col("b2", r.b2)
                .col("bound", r.bound)
                .col("empirical_l1", r.empirical_l1)
                .col("mc_error", est.mc_error)
                .point("lambda", r.lambda)
                .point("bound", r.bound)
                .point("empirical_l1", r.empirical_l1);
        }
        Command::Fu => {
            let grid: Vec<f64> = (0..FU_GRID_POINTS)
                .map(|i| i as f64 / (FU_GRID_POINTS - 1) as f64)
                .collect();
            let c = fu_curve(dist, cfg.trials, &grid, cfg.seed, n)?;
            cell.col("F_U_below_one", c.below_one.mean)
                .col("stderr_below_one", c.below_one.stderr)
                .col("lemma5_check", c.lemma5_check)
                .stat("F_U_below_one", &c.below_one)
                .point("lemma5_check", c.lemma5_check);
        }
        Command::Exist => {
            let e = existence_experiment(&plan)?;
            cell.col("P_pure", e.p_pure.mean)
                .col("P_two_point", e.p_two_point.mean)
                .col("P_le2", e.p_le2.mean)
                .col("stderr_le2", e.p_le2.stderr)
                .stat("P_pure", &e.p_pure)
                .stat("P_two_point", &e.p_two_point)
                .stat("P_le2", &e.p_le2);
        }
        Command::Sweep => {
            let mu = estimate_mu(&plan)?;
            cell.col("mu", mu.mean)
                .col("stderr_mu", mu.stderr)
                .col("ci_lo", mu.ci_lo)
                .col("ci_hi", mu.ci_hi)
                .stat("mu", &mu);
        }
    }
    Ok(cell)
}

/// Runs every (dist, n) cell of the configuration in order.
pub fn execute(cfg: &RunConfig) -> Result<Vec<ResultCell>, CliError> {
    let body = || {
        let mut cells = Vec::new();
        for dist in &cfg.dists {
            for &n in &cfg.ns {
                cells.push(run_cell(cfg, dist, n)?);
            }
        }
        Ok::<_, crate::Error>(cells)
    };
    let result = match cfg.threads {
        Some(t) => with_threads(t, body).map_err(|e| CliError::Runtime(e.to_string()))?,
        None => body(),
    };
    result.map_err(|e| CliError::Runtime(e.to_string()))
}

/// Formats a number with 17 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn header(cells: &[ResultCell]) -> Vec<String> {
    let mut h: Vec<String> = ["seed", "dist", "n", "trials"].map(String::from).to_vec();
    if let Some(c) = cells.first() {
        h.extend(c.columns.iter().map(|(k, _)| k.clone()));
    }
    h
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(format!("csv: {e}"))
}

pub fn render_csv(cells: &[ResultCell]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(cells)).map_err(csv_error)?;
    for c in cells {
        let mut rec = vec![
            c.seed.to_string(),
            c.dist.clone(),
            c.n.to_string(),
            c.trials.to_string(),
        ];
        rec.extend(c.columns.iter().map(|(_, v)| v.map(format_number).unwrap_or_default()));
        w.write_record(rec).map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

pub fn render_json(cells: &[ResultCell]) -> Result<String, CliError> {
    let rows: Vec<Value> = cells
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("seed".into(), c.seed.into());
            m.insert("dist".into(), c.dist.clone().into());
            m.insert("n".into(), c.n.into());
            m.insert("trials".into(), c.trials.into());
            for (k, v) in &c.columns {
                m.insert(k.clone(), v.map_or(Value::Null, Value::from));
            }
            Value::Object(m)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Long-format plot data: `dist,n,statistic,value,ci_lo,ci_hi`, sorted by
/// (statistic, n) and otherwise in run order.
pub fn emit_plot_data(cells: &[ResultCell]) -> Result<String, CliError> {
    let mut rows: Vec<PlotRow> = cells
        .iter()
        .flat_map(|c| {
            c.statistics.iter().map(|(name, v, lo, hi)| PlotRow {
                dist: c.dist.clone(),
                n: c.n,
                statistic: name.clone(),
                value: *v,
                ci_lo: *lo,
                ci_hi: *hi,
            })
        })
        .collect();
    rows.sort_by(|a, b| (&a.statistic, a.n).cmp(&(&b.statistic, b.n)));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dist", "n", "statistic", "value", "ci_lo", "ci_hi"])
        .map_err(csv_error)?;
    for r in &rows {
        w.write_record([
            r.dist.clone(),
            r.n.to_string(),
            r.statistic.clone(),
            format_number(r.value),
            format_number(r.ci_lo),
            format_number(r.ci_hi),
        ])
        .map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

pub fn parse_plot_data(text: &str) -> Result<Vec<PlotRow>, CliError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(csv_error)
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body)
        .map_err(|e| CliError::Runtime(format!("writing {}: {e}", path.display())))
}

/// `<out>.meta.json`: everything that must not enter the results body.
fn meta_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn write_outputs(cfg: &RunConfig, cells: &[ResultCell]) -> Result<(), CliError> {
    let body = match cfg.format {
        Format::Csv => render_csv(cells)?,
        Format::Json => render_json(cells)?,
    };
    match &cfg.out {
        Some(path) => {
            write_file(path, &body)?;
            let timestamp = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let meta = serde_json::json!({
                "version": env!("CARGO_PKG_VERSION"),
                "created_unix": timestamp,
                "config": cfg,
            });
            write_file(&meta_path(path), &format!("{meta:#}\n"))?;
        }
        None => print!("{body}"),
    }
    if let Some(plot) = &cfg.plot {
        write_file(plot, &emit_plot_data(cells)?)?;
    }
    Ok(())
}

/// Parses `args` (program name first), runs, writes outputs and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| {
        let cells = execute(&cfg)?;
        for c in &cells {
            eprintln!("{}", c.summary());
        }
        write_outputs(&cfg, &cells)
    });
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("esslab: {e}");
            e.exit_code()
        }
    }
}
