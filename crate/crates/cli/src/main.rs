use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use circext::laurent::default_grid;
use circext_cli::config::DEFAULT_SEED;
use circext_cli::error::EXIT_IO;
use circext_cli::{execute, Command, RunConfig};
use clap::Parser;

/// Determinant cocycles of analytic circle diffeomorphisms.
#[derive(Debug, Parser)]
#[command(name = "circext", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation N (first N when doubling).
    #[arg(long, global = true, default_value_t = 64)]
    truncation: usize,

    /// Quadrature grid M [default: 4N+1].
    #[arg(long, global = true)]
    grid: Option<usize>,

    /// Cauchy tolerance for truncation doubling.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Largest truncation tried when doubling.
    #[arg(long, global = true, default_value_t = 512)]
    nmax: usize,

    #[arg(long, global = true, env = "CIRCEXT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for the suites [default: all cores].
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Double N until successive values agree to --tol.
    #[arg(long, global = true)]
    convergence: bool,

    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Samples per suite check [default: per check].
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Largest basis degree in the Lie sweep.
    #[arg(long, global = true, default_value_t = 6)]
    degree: i64,

    /// Contour offset σ for kernel traces.
    #[arg(long, global = true, default_value_t = 0.1)]
    sigma: f64,

    /// Contour offset ε for exterior-power traces.
    #[arg(long, global = true, default_value_t = 0.1)]
    epsilon: f64,
}

impl Cli {
    fn config(&self) -> RunConfig {
        RunConfig {
            truncation: self.truncation,
            grid: self.grid.unwrap_or_else(|| default_grid(self.truncation)),
            tol: self.tol,
            nmax: self.nmax,
            seed: self.seed,
            sigma: self.sigma,
            epsilon: self.epsilon,
            jobs: self.jobs.unwrap_or(0),
            convergence: self.convergence,
            samples: self.samples,
            degree: self.degree,
        }
    }
}

fn emit(doc: &serde_json::Value, output: Option<&PathBuf>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cfg = cli.config();
    let start = Instant::now();
    let (doc, code) = match execute(&cli.command, &cfg) {
        Ok(out) => (out.document, out.exit_code),
        Err(e) => {
            eprintln!("error: {e}");
            (e.to_document(), e.exit_code())
        }
    };
    log::info!("finished in {:.2?}", start.elapsed());
    if let Err(e) = emit(&doc, cli.output.as_ref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_IO as u8);
    }
    ExitCode::from(code as u8)
}
