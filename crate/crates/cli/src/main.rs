use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use tropicalis::calculus::XiGrid;
use tropicalis::linalg::BellmanMethod;
use tropicalis::SemiringDescriptor;

mod commands;
mod output;

use commands::{ProjectMode, ValidateMode};
use output::{error_of, error_record, Format};

/// Idempotent semirings, completions, tropical linear algebra and
/// idempotent analysis on sampled functions.
#[derive(Parser, Debug)]
#[command(name = "tropicalis", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text", alias = "out")]
    format: Format,

    /// Seed for sampling subcommands; printed in a header record.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check semiring, semifield or integral-closure axioms of a Cayley table.
    #[command(
        group(ArgGroup::new("mode").args(["semiring", "semifield", "integrally_closed"])),
        after_help = "CSV columns: subject,check,verdict,witness (last row has check=all)"
    )]
    Validate {
        file: PathBuf,
        #[arg(long)]
        semiring: bool,
        #[arg(long)]
        semifield: bool,
        #[arg(long)]
        integrally_closed: bool,
    },
    /// Normal completion of a finite idempotent semiring or semilattice.
    #[command(after_help = "Text output is a Cayley table. CSV columns: index,label,cut,embedded")]
    Complete { file: PathBuf },
    /// Optimal paths from a source over a path semiring.
    #[command(after_help = "CSV columns: source,target,dist,path")]
    SolvePath {
        file: PathBuf,
        #[arg(long, default_value = "rmin")]
        semiring: SemiringDescriptor,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        target: Option<usize>,
    },
    /// Kleene star A* of a square matrix.
    #[command(after_help = "Text output is a matrix file. CSV columns: row,col,value")]
    Star { file: PathBuf },
    /// Least solution of X = H X + F; all methods unless one is named.
    #[command(after_help = "CSV columns: method,iterations,row,col,value. F defaults to the identity.")]
    Bellman {
        file: PathBuf,
        #[arg(long)]
        rhs: Option<PathBuf>,
        #[arg(long)]
        method: Option<BellmanMethod>,
    },
    /// Randomized duality identity suites.
    #[command(after_help = "CSV columns: suite,verdict,trials,failures,first_failure")]
    DualityCheck {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Upper projection onto an inf-closure or lower projection onto a span.
    #[command(after_help = "Text output is a one-row matrix file. CSV columns: index,value")]
    Project {
        file: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, value_enum, default_value = "upper")]
        mode: ModeArg,
    },
    /// Legendre transform sup_x (xi x + phi(x)) of a sampled function.
    #[command(after_help = "Text output is a sampled-function file. CSV columns: xi,value")]
    Legendre {
        file: PathBuf,
        /// Slope grid a:b:step.
        #[arg(long, allow_hyphen_values = true)]
        xi: XiGrid,
        /// Classical conjugate sup_x (xi x - phi(x)).
        #[arg(long)]
        fenchel: bool,
        /// Linear-time scan; falls back to brute force on non-concave input.
        #[arg(long)]
        fast: bool,
    },
    /// Gap between Cole-Hopf and Hopf-Lax solutions as h shrinks.
    #[command(after_help = "CSV columns: init,t,h,gap,at")]
    HjDemo {
        /// quad, abs, double_well or file:<path>.
        #[arg(long, default_value = "quad")]
        init: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Comma-separated deformation parameters.
        #[arg(long, value_delimiter = ',')]
        h: Vec<f64>,
        /// Window a:b over which the sup-norm gap is taken.
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        window: String,
    },
    /// Idempotent integral, integral against a density, or measure of an index set.
    #[command(after_help = "CSV columns: quantity,value")]
    Integrate {
        file: PathBuf,
        #[arg(long)]
        with: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Upper,
    Lower,
}

fn parse_window(s: &str) -> tropicalis::Result<(f64, f64)> {
    let bad = || tropicalis::Error::Domain(format!("expected a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn run(cli: &Cli) -> tropicalis::Result<output::Output> {
    match &cli.command {
        Command::Validate { file, semifield, integrally_closed, .. } => {
            let mode = if *semifield {
                ValidateMode::Semifield
            } else if *integrally_closed {
                ValidateMode::IntegrallyClosed
            } else {
                ValidateMode::Semiring
            };
            commands::validate(file, mode)
        }
        Command::Complete { file } => commands::complete(file),
        Command::SolvePath { file, semiring, source, target } => commands::solve_path(file, *semiring, *source, *target),
        Command::Star { file } => commands::star(file),
        Command::Bellman { file, rhs, method } => commands::bellman(file, rhs.as_deref(), *method),
        Command::DualityCheck { dim, trials } => commands::duality_check(*dim, *trials, cli.seed),
        Command::Project { file, gens, mode } => {
            let mode = match mode {
                ModeArg::Upper => ProjectMode::Upper,
                ModeArg::Lower => ProjectMode::Lower,
            };
            commands::project(file, gens, mode)
        }
        Command::Legendre { file, xi, fenchel, fast } => commands::legendre_cmd(file, xi, *fenchel, *fast),
        Command::HjDemo { init, t, h, window } => commands::hj_demo(init, *t, h, parse_window(window)?),
        Command::Integrate { file, with, indices } => commands::integrate(file, with.as_deref(), indices.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stderr = std::io::stderr();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.format).as_bytes());
            let _ = stdout.flush();
            for n in &out.notes {
                let _ = writeln!(stderr, "note: {n}");
            }
            match &out.failure {
                Some(msg) => {
                    let _ = writeln!(stderr, "{}", error_record("check-failed", msg, cli.format));
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_of(&e, cli.format));
            ExitCode::from(1)
        }
    }
}
