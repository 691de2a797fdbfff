use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bruhat_poincare::cli::{self, Format, Report, VerifyScope, DEFAULT_MAX_N_COMBINATORIAL, DEFAULT_MAX_N_HULL};
use bruhat_poincare::polytope::HullLimits;
use bruhat_poincare::{Error, LatticePolytope, Permutation};

/// Poincaré polynomials of generic torus orbit closures in Schubert
/// varieties, via Bruhat interval polytopes.
#[derive(Parser)]
#[command(name = "bruhat-poincare", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Largest rank n accepted [default: 6 for hull-backed commands, 8 otherwise].
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct Height {
    /// Height vector a, comma separated (e.g. 12,2,-1,-2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hvec: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Command {
    /// A_w(t), P(Y_w, t) and the per-vertex ascent table for [id, w].
    Poincare {
        w: Permutation,
        #[command(flatten)]
        height: Height,
    },
    /// A retraction sequence of the polytope of [v, w].
    Retraction {
        v: Permutation,
        w: Permutation,
        #[command(flatten)]
        height: Height,
        /// Search exhaustively instead of using the height function.
        #[arg(long)]
        search: bool,
    },
    /// Run the cross-checks on S_4, on [id, w], or on a polytope file.
    Verify {
        #[command(flatten)]
        scope: Scope,
        #[command(flatten)]
        height: Height,
    },
    /// Vertex smoothness of the polytope of [id, w].
    Smoothness { w: Permutation },
    /// The ascent polynomial A_{v,w}(t).
    Richardson { v: Permutation, w: Permutation },
    /// Retraction-sequence existence for every pair v <= w in S_n.
    Survey {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Scope {
    /// Every w in S_4.
    #[arg(long)]
    s4: bool,
    #[arg(long)]
    w: Option<Permutation>,
    /// Polytope JSON file: {"vertices": [[...], ...]}.
    #[arg(long)]
    polytope: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let limits = HullLimits::default();
    let hull_n = cli.max_n.unwrap_or(DEFAULT_MAX_N_HULL);
    match &cli.command {
        Command::Poincare { w, height } => cli::poincare_report(
            w,
            height.hvec.as_deref(),
            cli.max_n.unwrap_or(DEFAULT_MAX_N_COMBINATORIAL),
        ),
        Command::Retraction { v, w, height, search } => {
            cli::retraction_report(v, w, height.hvec.as_deref(), *search, hull_n, &limits)
        }
        Command::Verify { scope, height } => {
            let scope = if scope.s4 {
                VerifyScope::S4
            } else if let Some(w) = &scope.w {
                VerifyScope::Permutation(w.clone())
            } else {
                let path = scope.polytope.as_ref().expect("clap enforces one scope");
                let text = std::fs::read_to_string(path)?;
                let q = LatticePolytope::from_json(&text, &limits)?;
                VerifyScope::Polytope(path.display().to_string(), q)
            };
            cli::verify_report(&scope, height.hvec.as_deref(), hull_n, &limits)
        }
        Command::Smoothness { w } => cli::smoothness_cmd_report(w, hull_n, &limits),
        Command::Richardson { v, w } => cli::richardson_report(v, w, hull_n, &limits),
        Command::Survey { n } => cli::survey_report(*n, hull_n, &limits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
        OutputFormat::Csv => Format::Csv,
    };
    let start = Instant::now();
    let outcome = run(&cli).and_then(|mut report| {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
        let rendered = report.render(format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, rendered)?,
            None => print!("{rendered}"),
        }
        Ok(report.exit_code())
    });
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_hypothesis_violation() { 2 } else { 1 })
        }
    }
}
