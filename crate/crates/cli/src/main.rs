//! Command-line surface for the spectral toolkit.
//!
//! Table commands (`dispersion`, `gamma`, `solve`) emit CSV by default
//! or a columns/rows JSON object with `--format json`; report commands
//! (`index`, `critical`, `roots`, `mu0`, `zero`) emit compact JSON, and
//! `modes` emits an expansion JSON. All output is deterministic:
//! floats print as `%.15e`, lines end in LF, and JSON keys sort
//! lexicographically, so identical invocations are byte-identical.
//!
//! Failures print `{"error":{"kind":...,"message":...}}` on stderr and
//! exit with 2 for domain/parse problems, 3 when a quantity is
//! indeterminate at a spectral boundary, and 4 for convergence
//! failures.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use stokes_spectra::format::{format_e15, JsonValue};
use stokes_spectra::{
    assemble_solution, classify_regime, critical_point, find_eta0, g_of_mu, index_kappa,
    lambda0_real, mu0, s, trace_gamma, velocity_moment, y1_roots, Error, ModeExpansion, Omega1,
    Result, SpectrumReport, TraceControls, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "stokes-spectra",
    version,
    about = "Spectral theory of the half-space kinetic shear problem",
    after_help = "The STOKES_SPECTRA_TOL environment variable overrides the default \
                  tolerance (1e-10); an explicit --tol beats both."
)]
struct Cli {
    /// Quadrature tolerance for commands that integrate.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Output format for table commands (reports are always JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Real-axis dispersion table: mu, lambda0_real, im_lambda_plus.
    Dispersion {
        /// Frequency, or a comma-separated list for one column each.
        #[arg(long, default_value = "0")]
        omega1: String,
        /// mu grid as start:stop:step.
        #[arg(long, default_value = "0:4:0.01")]
        grid: String,
    },
    /// Boundary-coefficient curve: mu, re_g, im_g, theta.
    Gamma {
        #[arg(long, allow_negative_numbers = true)]
        omega1: f64,
        /// Fixed mu grid start:stop:step (start > 0). Default: adaptive
        /// trace over (0, 8].
        #[arg(long)]
        grid: Option<String>,
    },
    /// Winding index of the boundary curve: {"N", "kappa"}.
    Index {
        #[arg(long, allow_negative_numbers = true)]
        omega1: f64,
    },
    /// Critical frequency and its maximizing mu.
    Critical,
    /// Roots of the envelope equation: {"mu1", "mu2", "omega1"}.
    Roots {
        #[arg(long, allow_negative_numbers = true)]
        omega1: f64,
    },
    /// The axis root mu0 with the dispersion residual and s(mu0).
    Mu0,
    /// Locate the discrete zero: full spectrum report.
    Zero {
        #[arg(long, allow_negative_numbers = true)]
        omega1: f64,
    },
    /// Emit a mode-expansion template JSON.
    Modes {
        #[arg(long, allow_negative_numbers = true)]
        omega1: f64,
        /// Spectral grid start:stop:step for the continuous density
        /// (omit for a pure-discrete expansion).
        #[arg(long)]
        grid: Option<String>,
        /// Discrete amplitude as "re" or "re,im".
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a0: String,
    },
    /// Evaluate an expansion along x1: x1, mu, re_h, im_h, u_y.
    Solve {
        /// Path to an expansion JSON (as produced by `modes`).
        #[arg(long)]
        expansion: PathBuf,
        /// x1 grid start:stop:step.
        #[arg(long, default_value = "0:5:0.1")]
        grid: String,
        /// Velocity at which the distribution column is evaluated.
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        mu: f64,
        /// Wall-clock phase t1 for the observable velocity u_y.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t1: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{}", error_json(&e));
        std::process::exit(exit_code(&e));
    }
}

fn run(cli: Cli) -> Result<()> {
    let tol = resolve_tol(cli.tol)?;
    let output = match &cli.command {
        Command::Dispersion { omega1, grid } => {
            cmd_dispersion(omega1, grid)?.render(cli.format)
        }
        Command::Gamma { omega1, grid } => {
            cmd_gamma(*omega1, grid.as_deref())?.render(cli.format)
        }
        Command::Index { omega1 } => {
            let kappa = index_kappa(Omega1::new(*omega1)?)?;
            render_report(vec![
                ("N".into(), JsonValue::Int(i64::from(2 * kappa))),
                ("kappa".into(), JsonValue::Int(i64::from(kappa))),
            ])
        }
        Command::Critical => {
            let (omega1_star, argmax_mu) = critical_point();
            render_report(vec![
                ("argmax_mu".into(), JsonValue::Float(argmax_mu)),
                ("omega1_star".into(), JsonValue::Float(omega1_star)),
            ])
        }
        Command::Roots { omega1 } => {
            let pair = y1_roots(Omega1::new(*omega1)?);
            let (mu1, mu2) = match pair.roots {
                Some((r1, r2)) => (JsonValue::Float(r1), JsonValue::Float(r2)),
                None => (JsonValue::Null, JsonValue::Null),
            };
            render_report(vec![
                ("mu1".into(), mu1),
                ("mu2".into(), mu2),
                ("omega1".into(), JsonValue::Float(pair.omega1.value())),
            ])
        }
        Command::Mu0 => {
            let m = mu0();
            render_report(vec![
                ("lambda0_at_mu0".into(), JsonValue::Float(lambda0_real(m))),
                ("mu0".into(), JsonValue::Float(m)),
                ("s_mu0".into(), JsonValue::Float(s(m)?)),
            ])
        }
        Command::Zero { omega1 } => {
            let report = cmd_zero(*omega1)?;
            render_report(spectrum_fields(&report))
        }
        Command::Modes { omega1, grid, a0 } => {
            let expansion = cmd_modes(*omega1, grid.as_deref(), a0)?;
            let mut text = expansion.to_json_string();
            text.push('\n');
            text
        }
        Command::Solve { expansion, grid, mu, t1 } => {
            cmd_solve(expansion, grid, *mu, *t1, tol)?.render(cli.format)
        }
    };
    emit(cli.out.as_deref(), &output)
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_dispersion(omega1_list: &str, grid: &str) -> Result<Table> {
    let omegas = parse_omega_list(omega1_list)?;
    let mus = parse_grid(grid)?;
    let mut columns = vec!["mu".to_string(), "lambda0_real".to_string()];
    if omegas.len() == 1 {
        columns.push("im_lambda_plus".into());
    } else {
        for om in &omegas {
            columns.push(format!("im_lambda_plus_w{}", om.value()));
        }
    }
    let mut rows = Vec::with_capacity(mus.len());
    for &mu in &mus {
        let mut row = vec![mu, lambda0_real(mu)];
        let s_mu = s(mu)?;
        for om in &omegas {
            row.push(s_mu - om.value());
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

fn cmd_gamma(omega1: f64, grid: Option<&str>) -> Result<Table> {
    let om = Omega1::new(omega1)?;
    let columns = ["mu", "re_g", "im_g", "theta"].map(String::from).to_vec();
    let rows = match grid {
        None => {
            let curve = trace_gamma(om, 8.0, &TraceControls::default())?;
            curve
                .samples
                .iter()
                .map(|sample| vec![sample.mu, sample.g.re, sample.g.im, sample.theta])
                .collect()
        }
        Some(text) => {
            // On a fixed grid the angle is unwrapped sample-to-sample,
            // anchored at the principal argument of the first point.
            let mus = parse_grid(text)?;
            let mut rows = Vec::with_capacity(mus.len());
            let mut prev: Option<(Complex64, f64)> = None;
            for &mu in &mus {
                let g = g_of_mu(mu, om)?;
                let theta = match prev {
                    None => g.arg(),
                    Some((g_prev, theta_prev)) => theta_prev + (g / g_prev).arg(),
                };
                prev = Some((g, theta));
                rows.push(vec![mu, g.re, g.im, theta]);
            }
            rows
        }
    };
    Ok(Table { columns, rows })
}

fn cmd_zero(omega1: f64) -> Result<SpectrumReport> {
    let om = Omega1::new(omega1)?;
    match find_eta0(om) {
        Ok(report) => Ok(report),
        // An empty discrete spectrum is a result, not a failure.
        Err(Error::NoDiscreteSpectrum { .. }) => Ok(SpectrumReport {
            omega1: om,
            zero_count: 0,
            eta0: None,
            regime: classify_regime(om),
            residual: None,
        }),
        Err(e) => Err(e),
    }
}

fn cmd_modes(omega1: f64, grid: Option<&str>, a0: &str) -> Result<ModeExpansion> {
    let om = Omega1::new(omega1)?;
    let a0 = parse_complex_flag(a0)?;
    let nodes = match grid {
        Some(text) => parse_grid(text)?,
        None => Vec::new(),
    };
    let densities = vec![Complex64::new(0.0, 0.0); nodes.len()];
    ModeExpansion::new(om, a0, nodes, densities)
}

fn cmd_solve(path: &PathBuf, grid: &str, mu: f64, t1: f64, tol: f64) -> Result<Table> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let expansion = ModeExpansion::from_json_str(&text)?;
    let xs = parse_grid(grid)?;
    let columns = ["x1", "mu", "re_h", "im_h", "u_y"].map(String::from).to_vec();
    let mut rows = Vec::with_capacity(xs.len());
    for &x1 in &xs {
        let h = assemble_solution(&expansion, x1, mu)?;
        let u_y = velocity_moment(&expansion, x1, t1, tol)?;
        rows.push(vec![x1, mu, h.re, h.im, u_y]);
    }
    Ok(Table { columns, rows })
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn resolve_tol(flag: Option<f64>) -> Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("STOKES_SPECTRA_TOL") {
            Ok(raw) => raw.trim().parse::<f64>().map_err(|_| {
                Error::Parse(format!("STOKES_SPECTRA_TOL is not a number (got {raw:?})"))
            })?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain(format!("tolerance must be positive (got {tol})")));
    }
    Ok(tol)
}

fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "grid must be start:stop:step (got {text:?})"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("non-numeric grid field {p:?} in {text:?}")))
        })
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !(step > 0.0) || !step.is_finite() {
        return Err(Error::Parse(format!(
            "grid needs finite bounds and a positive step (got {text:?})"
        )));
    }
    if stop < start {
        return Err(Error::Parse(format!("grid stop precedes start in {text:?}")));
    }
    // Tolerate stop values that miss the last node by float dust.
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 2_000_001 {
        return Err(Error::Parse(format!(
            "grid {text:?} would produce {count} rows; cap is 2000001"
        )));
    }
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

fn parse_omega_list(list: &str) -> Result<Vec<Omega1>> {
    let mut omegas = Vec::new();
    for field in list.split(',') {
        let raw = field.trim();
        let value = raw
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("non-numeric frequency {raw:?}")))?;
        omegas.push(Omega1::new(value)?);
    }
    Ok(omegas)
}

fn parse_complex_flag(raw: &str) -> Result<Complex64> {
    let parts: Vec<&str> = raw.split(',').collect();
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("non-numeric amplitude field {p:?}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Error::Parse(format!(
            "amplitude must be \"re\" or \"re,im\" (got {raw:?})"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(|&v| format_e15(v)).collect();
                    out.push_str(&fields.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let columns = self
                    .columns
                    .iter()
                    .map(|c| JsonValue::Str(c.clone()))
                    .collect();
                let rows = self
                    .rows
                    .iter()
                    .map(|row| JsonValue::Array(row.iter().map(|&v| JsonValue::Float(v)).collect()))
                    .collect();
                let mut text = JsonValue::Object(vec![
                    ("columns".into(), JsonValue::Array(columns)),
                    ("rows".into(), JsonValue::Array(rows)),
                ])
                .render();
                text.push('\n');
                text
            }
        }
    }
}

fn render_report(fields: Vec<(String, JsonValue)>) -> String {
    let mut text = JsonValue::Object(fields).render();
    text.push('\n');
    text
}

fn spectrum_fields(report: &SpectrumReport) -> Vec<(String, JsonValue)> {
    vec![
        (
            "eta0".into(),
            report.eta0.map_or(JsonValue::Null, JsonValue::complex),
        ),
        ("omega1".into(), JsonValue::Float(report.omega1.value())),
        ("regime".into(), JsonValue::Str(report.regime.name().into())),
        (
            "residual".into(),
            report.residual.map_or(JsonValue::Null, JsonValue::Float),
        ),
        ("zero_count".into(), JsonValue::Int(i64::from(report.zero_count))),
    ]
}

fn emit(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_)
        | Error::SingularCoefficient { .. }
        | Error::Grid(_)
        | Error::Parse(_)
        | Error::NoDiscreteSpectrum { .. } => 2,
        Error::BoundaryIndeterminate { .. } => 3,
        Error::Convergence(_) | Error::Unwrap { .. } => 4,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Convergence(_) => "convergence",
        Error::BoundaryIndeterminate { .. } => "boundary_indeterminate",
        Error::SingularCoefficient { .. } => "singular_coefficient",
        Error::NoDiscreteSpectrum { .. } => "no_discrete_spectrum",
        Error::Unwrap { .. } => "unwrap",
        Error::Grid(_) => "grid",
        Error::Parse(_) => "parse",
    }
}

fn error_json(e: &Error) -> String {
    JsonValue::Object(vec![(
        "error".into(),
        JsonValue::Object(vec![
            ("kind".into(), JsonValue::Str(error_kind(e).into())),
            ("message".into(), JsonValue::Str(e.to_string())),
        ]),
    )])
    .render()
}
