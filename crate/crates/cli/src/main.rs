use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

mod commands;
mod report;

use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "cusped-spectra", version, about = "Quillen-metric numerics on cusped and degenerating Riemann surfaces")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel quadrature and enumeration.
    #[arg(long, global = true, env = "CUSPED_SPECTRA_THREADS")]
    threads: Option<usize>,

    /// Override the tolerance of every check the command performs.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Comma-separated schedule: ε values for `reg-integral`, step sizes for `zeta selberg --zprime`.
    #[arg(long, global = true, value_parser = parse_schedule)]
    schedule: Option<Schedule>,
}

#[derive(Clone, Debug)]
pub struct Schedule(Vec<f64>);

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Schedule)
}

/// `k=A..B`, inclusive.
#[derive(Clone, Copy, Debug)]
pub struct KRange(u32, u32);

fn parse_k_range(s: &str) -> Result<KRange, String> {
    let body = s.strip_prefix("k=").unwrap_or(s);
    let (a, b) = body.split_once("..").ok_or_else(|| format!("expected k=A..B, got {s:?}"))?;
    let a: u32 = a.parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(KRange(a, b))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Model {
    Poincare,
    Cylinder,
    Grafted,
    Flatten,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RegExample {
    /// `log|z| c₁` of the flattened Poincaré metric; finite part 1.
    Green,
    /// `1/(π r² |log r|)`; finite part `-2 log log 2`.
    CuspProfile,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EigenList {
    Circle,
    Torus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of C_k, c_k and E_k with ζ'(-1) and the Bismut constant.
    Constants {
        #[arg(long, default_value = "k=0..5", value_parser = parse_k_range)]
        list: KRange,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Primitive length spectrum of a preset group.
    Spectrum {
        #[arg(long, default_value = "thrice_punctured_sphere")]
        group: String,
        #[arg(long, default_value_t = 8.0)]
        cutoff: f64,
        /// Enumerate words up to this length instead of by trace.
        #[arg(long)]
        word_bound: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Selberg zeta products and spectral zeta determinants.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Takhtajan–Zograf torsion of a signature.
    Torsion {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        punctures: u32,
        /// Twist power n ≤ 0.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i32,
        /// Z'(1) when n = 0, Z(1 - n) otherwise.
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        allow_unstable: bool,
        /// log of the L² norm, to assemble the log Quillen norm.
        #[arg(long, allow_hyphen_values = true)]
        log_l2: Option<f64>,
    },
    /// Model metric densities, curvature and Wolpert scaling on a chart.
    Metrics {
        #[arg(long, value_enum, default_value = "poincare")]
        model: Model,
        /// Plumbing parameter for cylinder and grafted models.
        #[arg(long, default_value_t = 1e-4)]
        t: f64,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long, default_value_t = 8)]
        n_theta: usize,
        /// Write the density grid as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Regularized integral over a cusp disc.
    RegIntegral {
        #[arg(long, value_enum, default_value = "green")]
        example: RegExample,
    },
    /// Integral identities against their closed forms.
    #[command(group(ArgGroup::new("which").required(true).multiple(true).args(["double_integral", "node", "radial", "cylinder"])))]
    Identities {
        /// a=.. b=.. c=..
        #[arg(long, num_args = 3, value_names = ["a=A", "b=B", "c=C"])]
        double_integral: Option<Vec<String>>,
        /// a=.. b=.. c=.. [phase=..]
        #[arg(long, num_args = 3..=4, allow_hyphen_values = true)]
        node: Option<Vec<String>>,
        #[arg(long)]
        radial: bool,
        /// t=..
        #[arg(long)]
        cylinder: Option<String>,
    },
    /// Every acceptance criterion with its oracle.
    VerifyAll {
        /// Fewer random samples; tolerances unchanged.
        #[arg(long)]
        fast: bool,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZetaCommand {
    /// Truncated Selberg product over a preset spectrum.
    Selberg {
        #[arg(long, default_value = "thrice_punctured_sphere")]
        group: String,
        #[arg(long, default_value_t = 8.0)]
        cutoff: f64,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        s: Vec<f64>,
        /// Also estimate Z'(1).
        #[arg(long)]
        zprime: bool,
    },
    /// Zeta-regularized determinant of a flat eigenvalue list.
    Det {
        #[arg(long, value_enum, default_value = "circle")]
        list: EigenList,
        /// Modes per direction.
        #[arg(long)]
        size: Option<u32>,
        /// Multiply every eigenvalue by this factor.
        #[arg(long)]
        scale: Option<f64>,
    },
}

/// Failure before a report could be produced.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<cusped_spectra::Error> for CliError {
    fn from(e: cusped_spectra::Error) -> Self {
        use cusped_spectra::Error::*;
        let code = match e {
            InvalidArgument(_) | UnknownGroup(_) | Unstable { .. } => 2,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

pub fn arg_error(msg: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: msg.into(),
    }
}

fn dispatch(cli: &Cli) -> Result<RunReport, CliError> {
    use commands::*;
    let ctx = Ctx {
        tol: cli.tol,
        schedule: cli.schedule.as_ref().map(|s| s.0.clone()),
    };
    match &cli.command {
        Command::Constants { list, csv } => constants(&ctx, *list, csv.as_deref()),
        Command::Spectrum {
            group,
            cutoff,
            word_bound,
            csv,
        } => spectrum(&ctx, group, *cutoff, *word_bound, csv.as_deref()),
        Command::Zeta(z) => zeta(&ctx, z),
        Command::Torsion {
            genus,
            punctures,
            n,
            zeta,
            allow_unstable,
            log_l2,
        } => torsion(&ctx, *genus, *punctures, *n, *zeta, *allow_unstable, *log_l2),
        Command::Metrics {
            model,
            t,
            radii,
            n_theta,
            csv,
        } => metrics(&ctx, *model, *t, radii.as_deref(), *n_theta, csv.as_deref()),
        Command::RegIntegral { example } => reg_integral(&ctx, *example),
        Command::Identities {
            double_integral,
            node,
            radial,
            cylinder,
        } => identities(&ctx, double_integral.as_deref(), node.as_deref(), *radial, cylinder.as_deref()),
        Command::VerifyAll { fast, only } => verify_all(*fast, *only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let mut report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    report.wall_time = start.elapsed().as_secs_f64();
    let json = report.to_json();
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, json) {
                eprintln!("error: writing {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{json}"),
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} = {} (target {}, tolerance {})", c.name, c.value, c.target, c.tolerance);
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
