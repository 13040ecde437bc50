//! Command-line front end: parameter loading, solver dispatch and report
//! emission (coefficient listings, residual tables, phase data, comparisons).
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 tolerance violation,
//! 3 numeric divergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dtm::dtm_solve;
use crate::error::{Error, Result};
use crate::ladm::ladm_solve;
use crate::model::{
    parse_params, residual_point, InitialState, Method, ResidualSample, SeriesSolution, SirParams,
};
use crate::oracle::{max_deviation, rk4_integrate, sci17, DEFAULT_STEP};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TOLERANCE: i32 = 2;
pub const EXIT_DIVERGENCE: i32 = 3;

/// Residual sample times used by default: `0.0, 0.2, ..., 1.0`.
pub const DEFAULT_GRID: &str = "0:1:6";

#[derive(Debug, Parser)]
#[command(
    name = "sir-series",
    version,
    about = "Power-series solutions of the modified SIR computer-virus model"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Print series coefficients and polynomial listings.
    Solve(RunArgs),
    /// Tabulate absolute residuals of each equation on a time grid.
    Residual(RunArgs),
    /// Sample (t, S, I, R) on a grid for phase portraits.
    Phase(RunArgs),
    /// Check residuals, method agreement and the Runge-Kutta reference.
    Compare(RunArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    method: Option<MethodChoice>,
    /// Highest retained power of t.
    #[arg(long, default_value_t = 10)]
    degree: usize,
    /// Parameter file (`key = value` lines).
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
    /// Uniform grid START:END:COUNT.
    #[arg(long, conflicts_with = "times", value_name = "START:END:COUNT")]
    grid: Option<String>,
    /// Explicit comma-separated sample times.
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        value_name = "T1,T2,..."
    )]
    times: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Relative tolerance for DTM/LADM coefficient agreement (compare).
    #[arg(long, default_value_t = 1e-12)]
    tol_coeff: f64,
    /// Maximum deviation from the Runge-Kutta reference (compare).
    #[arg(long, default_value_t = 1e-9)]
    tol_oracle: f64,
    /// Runge-Kutta step for the reference trajectory (compare).
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
    /// Externally computed residuals (CSV `t,E_S,E_I,E_R`) shown alongside.
    #[arg(long, value_name = "FILE")]
    reference: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Dtm,
    Ladm,
    Both,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Dtm => vec![Method::Dtm],
            MethodChoice::Ladm => vec![Method::Ladm],
            MethodChoice::Both => vec![Method::Dtm, Method::Ladm],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Solve,
    Residual,
    Phase,
    Compare,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Residual => "residual",
            Command::Phase => "phase",
            Command::Compare => "compare",
        }
    }
}

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub command: Command,
    pub methods: Vec<Method>,
    pub degree: usize,
    pub grid: Vec<f64>,
    pub params_path: Option<PathBuf>,
    pub output: OutputFormat,
    pub out_path: Option<PathBuf>,
    pub tol_coeff: f64,
    pub tol_oracle: f64,
    pub step: f64,
    pub reference_path: Option<PathBuf>,
}

impl RunRequest {
    pub fn new(command: Command) -> Self {
        let methods = match command {
            Command::Phase => vec![Method::Ladm],
            _ => vec![Method::Dtm, Method::Ladm],
        };
        Self {
            command,
            methods,
            degree: 10,
            grid: parse_grid(DEFAULT_GRID).expect("default grid is valid"),
            params_path: None,
            output: OutputFormat::Csv,
            out_path: None,
            tol_coeff: 1e-12,
            tol_oracle: 1e-9,
            step: DEFAULT_STEP,
            reference_path: None,
        }
    }

    fn from_args(command: Command, args: RunArgs) -> Result<Self> {
        let mut req = RunRequest::new(command);
        if let Some(choice) = args.method {
            req.methods = choice.methods();
        }
        req.degree = args.degree;
        req.grid = match (&args.grid, &args.times) {
            (Some(spec), _) => parse_grid(spec)?,
            (None, Some(times)) => check_times(times.clone())?,
            (None, None) => req.grid,
        };
        req.params_path = args.params;
        req.output = args.format;
        req.out_path = args.out;
        req.tol_coeff = args.tol_coeff;
        req.tol_oracle = args.tol_oracle;
        req.step = args.step;
        req.reference_path = args.reference;
        Ok(req)
    }
}

/// `START:END:COUNT` as `COUNT` evenly spaced times (just `START` when the
/// count is one).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::Usage(format!("invalid grid `{spec}`: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, end, count] = parts[..] else {
        return Err(bad("expected START:END:COUNT"));
    };
    let start: f64 = start
        .trim()
        .parse()
        .map_err(|_| bad("START is not a number"))?;
    let end: f64 = end.trim().parse().map_err(|_| bad("END is not a number"))?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| bad("COUNT is not a positive integer"))?;
    if count == 0 {
        return Err(bad("COUNT must be at least 1"));
    }
    if count == 1 {
        return check_times(vec![start]);
    }
    let span = end - start;
    let last = (count - 1) as f64;
    let times = (0..count)
        .map(|k| {
            if k + 1 == count {
                end
            } else {
                start + span * (k as f64 / last)
            }
        })
        .collect();
    check_times(times)
}

fn check_times(times: Vec<f64>) -> Result<Vec<f64>> {
    if times.is_empty() {
        return Err(Error::Usage("no sample times given".into()));
    }
    if times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Usage("sample times must be finite".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Usage("sample times must be nondecreasing".into()));
    }
    Ok(times)
}

/// Rendered output plus the exit code it should produce.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Overflow { .. } | Error::Divergence { .. } => EXIT_DIVERGENCE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), executes, writes the report
/// to stdout or `--out`, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_SUCCESS
            };
        }
    };
    let (command, args) = match cli.command {
        CliCommand::Solve(a) => (Command::Solve, a),
        CliCommand::Residual(a) => (Command::Residual, a),
        CliCommand::Phase(a) => (Command::Phase, a),
        CliCommand::Compare(a) => (Command::Compare, a),
    };
    let outcome = RunRequest::from_args(command, args).and_then(|req| {
        let outcome = execute(&req)?;
        match &req.out_path {
            Some(path) => std::fs::write(path, &outcome.text)
                .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", outcome.text),
        }
        Ok(outcome)
    });
    match outcome {
        Ok(outcome) => outcome.exit_code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn load_params(path: Option<&Path>) -> Result<(SirParams, InitialState)> {
    match path {
        None => Ok((SirParams::default(), InitialState::default())),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_params(&text)
        }
    }
}

pub fn solve_with(
    method: Method,
    params: &SirParams,
    init: &InitialState,
    degree: usize,
) -> Result<SeriesSolution> {
    match method {
        Method::Dtm => dtm_solve(params, init, degree),
        Method::Ladm => ladm_solve(params, init, degree).map(|(sol, _)| sol),
    }
}

/// Largest relative gap between matching coefficients; pairs whose absolute
/// gap is at most `abs_floor` count as equal.
pub fn coefficient_deviation(a: &SeriesSolution, b: &SeriesSolution, abs_floor: f64) -> f64 {
    a.components()
        .iter()
        .zip(b.components())
        .flat_map(|(x, y)| {
            let len = x.coeffs().len().max(y.coeffs().len());
            (0..len).map(move |k| (x.coeff(k), y.coeff(k)))
        })
        .map(|(x, y)| {
            let gap = (x - y).abs();
            if gap <= abs_floor {
                0.0
            } else {
                gap / x.abs().max(y.abs())
            }
        })
        .fold(0.0, f64::max)
}

pub fn execute(req: &RunRequest) -> Result<Outcome> {
    let (params, init) = load_params(req.params_path.as_deref())?;
    let solutions = req
        .methods
        .iter()
        .map(|&m| solve_with(m, &params, &init, req.degree))
        .collect::<Result<Vec<_>>>()?;

    let mut report = Report {
        command: req.command,
        degree: req.degree,
        grid: req.grid.clone(),
        reports: solutions.iter().map(MethodReport::new).collect(),
        reference: None,
        comparison: None,
    };
    let mut exit_code = EXIT_SUCCESS;

    match req.command {
        Command::Solve => {}
        Command::Residual => {
            for (entry, sol) in report.reports.iter_mut().zip(&solutions) {
                entry.residual_table = Some(residual_rows(sol, &params, &req.grid)?);
            }
            if let Some(path) = &req.reference_path {
                report.reference = Some(load_reference(path)?);
            }
        }
        Command::Phase => {
            for (entry, sol) in report.reports.iter_mut().zip(&solutions) {
                let rows = req
                    .grid
                    .iter()
                    .map(|&t| sol.state_at(t).map(|[s, i, r]| [t, s, i, r]))
                    .collect::<Result<Vec<_>>>()?;
                entry.phase = Some(rows);
            }
        }
        Command::Compare => {
            let comparison = compare(req, &params, &init, &solutions)?;
            if !comparison.passed {
                exit_code = EXIT_TOLERANCE;
            }
            for (entry, sol) in report.reports.iter_mut().zip(&solutions) {
                entry.residual_table = Some(residual_rows(sol, &params, &req.grid)?);
            }
            if let Some(path) = &req.reference_path {
                report.reference = Some(load_reference(path)?);
            }
            report.comparison = Some(comparison);
        }
    }

    let text = match req.output {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Usage(format!("cannot encode report: {e}")))?;
            text.push('\n');
            text
        }
        OutputFormat::Csv => render_csv(&report),
    };
    Ok(Outcome { text, exit_code })
}

fn residual_rows(
    sol: &SeriesSolution,
    params: &SirParams,
    grid: &[f64],
) -> Result<Vec<ResidualSample>> {
    grid.iter()
        .map(|&t| {
            residual_point(sol, params, t).map(|r| ResidualSample {
                t,
                e_s: r.e_s.abs(),
                e_i: r.e_i.abs(),
                e_r: r.e_r.abs(),
            })
        })
        .collect()
}

fn compare(
    req: &RunRequest,
    params: &SirParams,
    init: &InitialState,
    solutions: &[SeriesSolution],
) -> Result<Comparison> {
    let t_start = req.grid[0];
    let t_end = *req.grid.last().expect("grid is nonempty");
    if t_start < 0.0 {
        return Err(Error::Usage(
            "compare needs a grid starting at t >= 0".into(),
        ));
    }

    let dtm = dtm_solve(params, init, req.degree)?;
    let (ladm, _) = ladm_solve(params, init, req.degree)?;
    let coefficient_deviation = coefficient_deviation(&dtm, &ladm, 1e-18);

    let trajectory = rk4_integrate(params, init, t_end, req.step)?;
    let mut methods = Vec::new();
    for sol in solutions {
        let residuals = residual_rows(sol, params, &req.grid)?;
        let max_residual = residuals
            .iter()
            .flat_map(|r| [r.e_s, r.e_i, r.e_r])
            .fold(0.0, f64::max);
        let oracle_deviation = max_deviation(sol, &trajectory)?;
        methods.push(MethodComparison {
            method: sol.method,
            max_residual,
            oracle_deviation,
            oracle_pass: oracle_deviation <= req.tol_oracle,
        });
    }
    let coefficient_pass = coefficient_deviation <= req.tol_coeff;
    let passed = coefficient_pass && methods.iter().all(|m| m.oracle_pass);
    Ok(Comparison {
        coefficient_deviation,
        tol_coeff: req.tol_coeff,
        coefficient_pass,
        tol_oracle: req.tol_oracle,
        oracle_step: req.step,
        oracle_end: t_end,
        methods,
        passed,
    })
}

/// Reads externally computed residuals from CSV `t,E_S,E_I,E_R` (header
/// required, `#` comments allowed).
fn load_reference(path: &Path) -> Result<Vec<ResidualSample>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_reference(&text)
}

pub fn parse_reference(text: &str) -> Result<Vec<ResidualSample>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            header_seen = true;
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols != ["t", "E_S", "E_I", "E_R"] {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected header `t,E_S,E_I,E_R`, found `{line}`"),
                });
            }
            continue;
        }
        let values = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        let [t, e_s, e_i, e_r] = values[..] else {
            return Err(Error::Parse {
                line: idx + 1,
                message: "expected 4 columns".into(),
            });
        };
        rows.push(ResidualSample { t, e_s, e_i, e_r });
    }
    Ok(rows)
}

#[derive(Debug, Serialize)]
struct Report {
    command: Command,
    degree: usize,
    grid: Vec<f64>,
    reports: Vec<MethodReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<Vec<ResidualSample>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comparison: Option<Comparison>,
}

#[derive(Debug, Serialize)]
struct MethodReport {
    method: Method,
    degree: usize,
    order_label: usize,
    coefficients: Triple<Vec<f64>>,
    polynomials: Triple<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_table: Option<Vec<ResidualSample>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase: Option<Vec<[f64; 4]>>,
}

#[derive(Debug, Serialize)]
struct Triple<T> {
    s: T,
    i: T,
    r: T,
}

impl MethodReport {
    fn new(sol: &SeriesSolution) -> Self {
        Self {
            method: sol.method,
            degree: sol.degree,
            order_label: sol.method.order_label(sol.degree),
            coefficients: Triple {
                s: sol.s.coeffs().to_vec(),
                i: sol.i.coeffs().to_vec(),
                r: sol.r.coeffs().to_vec(),
            },
            polynomials: Triple {
                s: sol.s.to_string(),
                i: sol.i.to_string(),
                r: sol.r.to_string(),
            },
            residual_table: None,
            phase: None,
        }
    }

    fn header(&self) -> String {
        let convention = match self.method {
            Method::Dtm => "listing order n = degree + 1",
            Method::Ladm => "partial-sum order n = degree",
        };
        format!(
            "# method={} degree={} order_label=n={} ({convention})",
            self.method, self.degree, self.order_label
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub coefficient_deviation: f64,
    pub tol_coeff: f64,
    pub coefficient_pass: bool,
    pub tol_oracle: f64,
    pub oracle_step: f64,
    pub oracle_end: f64,
    pub methods: Vec<MethodComparison>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct MethodComparison {
    pub method: Method,
    pub max_residual: f64,
    pub oracle_deviation: f64,
    pub oracle_pass: bool,
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "# sir-series {} {}",
        env!("CARGO_PKG_VERSION"),
        report.command.name()
    )
    .unwrap();

    match report.command {
        Command::Solve => {
            for entry in &report.reports {
                writeln!(out, "{}", entry.header()).unwrap();
                writeln!(out, "# S(t) = {}", entry.polynomials.s).unwrap();
                writeln!(out, "# I(t) = {}", entry.polynomials.i).unwrap();
                writeln!(out, "# R(t) = {}", entry.polynomials.r).unwrap();
                out.push_str("method,k,S,I,R\n");
                let c = &entry.coefficients;
                for k in 0..c.s.len() {
                    writeln!(
                        out,
                        "{},{k},{},{},{}",
                        entry.method,
                        sci17(c.s[k]),
                        sci17(c.i[k]),
                        sci17(c.r[k])
                    )
                    .unwrap();
                }
            }
        }
        Command::Residual => write_residual_csv(&mut out, report),
        Command::Phase => {
            for entry in &report.reports {
                writeln!(out, "{}", entry.header()).unwrap();
                out.push_str("t,S,I,R\n");
                for row in entry.phase.as_deref().unwrap_or_default() {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        sci17(row[0]),
                        sci17(row[1]),
                        sci17(row[2]),
                        sci17(row[3])
                    )
                    .unwrap();
                }
            }
        }
        Command::Compare => {
            let cmp = report
                .comparison
                .as_ref()
                .expect("compare fills the comparison");
            writeln!(
                out,
                "# oracle: classical RK4, step {}, t in [0, {}]",
                cmp.oracle_step, cmp.oracle_end
            )
            .unwrap();
            out.push_str("metric,method,value,tolerance,status\n");
            writeln!(
                out,
                "coefficient_deviation,dtm-ladm,{},{},{}",
                sci17(cmp.coefficient_deviation),
                cmp.tol_coeff,
                pass_fail(cmp.coefficient_pass)
            )
            .unwrap();
            for m in &cmp.methods {
                writeln!(
                    out,
                    "max_residual,{},{},,info",
                    m.method,
                    sci17(m.max_residual)
                )
                .unwrap();
                writeln!(
                    out,
                    "oracle_deviation,{},{},{},{}",
                    m.method,
                    sci17(m.oracle_deviation),
                    cmp.tol_oracle,
                    pass_fail(m.oracle_pass)
                )
                .unwrap();
            }
            writeln!(out, "# overall: {}", pass_fail(cmp.passed)).unwrap();
        }
    }
    out
}

fn write_residual_csv(out: &mut String, report: &Report) {
    for entry in &report.reports {
        writeln!(out, "{}", entry.header()).unwrap();
    }
    if report.reference.is_some() {
        out.push_str("# method=reference (user-supplied values, not computed)\n");
    }
    out.push_str("method,t,abs_E_S,abs_E_I,abs_E_R\n");
    let labelled = report
        .reports
        .iter()
        .map(|e| {
            (
                e.method.name(),
                e.residual_table.as_deref().unwrap_or_default(),
            )
        })
        .chain(report.reference.as_deref().map(|rows| ("reference", rows)));
    for (label, rows) in labelled {
        for row in rows {
            writeln!(
                out,
                "{label},{},{},{},{}",
                sci17(row.t),
                sci17(row.e_s),
                sci17(row.e_i),
                sci17(row.e_r)
            )
            .unwrap();
        }
    }
}
