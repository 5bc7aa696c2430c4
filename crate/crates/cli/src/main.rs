mod cache;
mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use foldlab_core::invariants::DEFAULT_SEED;
use foldlab_core::opers::DEFAULT_ORDER;
use foldlab_core::reps::DEFAULT_CAP;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "foldlab", version, about = "Exact computations around Dynkin diagram folding")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Truncation order for oper normal forms.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Largest module dimension constructed.
    #[arg(long = "cap", global = true, default_value_t = DEFAULT_CAP)]
    pub dimension_cap: usize,
    /// Cache directory; FOLDLAB_CACHE takes precedence.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fold a root datum along a diagram automorphism.
    Fold(commands::FoldArgs),
    /// Twining characters against the folded multiplicities.
    Twining(commands::TwiningArgs),
    /// Littlewood-Richardson coefficients for GL_n.
    Lr(commands::LrArgs),
    /// The PGL_4 example of a non-monoidal embedding.
    WitnessNonmonoidal,
    /// Chevalley generators and the Kostant section.
    Invariants(commands::AlgebraArgs),
    /// The shift-of-argument family and its Jacobian rank.
    Mf(commands::MfArgs),
    /// The sigma-fixed part of the Kostant section.
    SectionCheck(commands::PairArgs),
    /// Oper normal forms and residues.
    #[command(subcommand)]
    Oper(commands::OperCommand),
    /// Spectrum of the quadratic family on a highest-weight module.
    Spectrum(commands::SpectrumArgs),
    /// Run the acceptance suite.
    Accept(commands::AcceptArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = write!(std::io::stdout().lock(), "{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.kind().to_string();
            let detail = e.to_string();
            let _ = writeln!(std::io::stdout().lock(), "{}", json!({ "error": { "kind": "invalid", "message": msg, "detail": detail.trim() } }));
            return ExitCode::from(3);
        }
    };
    let mut config = cli.config;
    if let Some(dir) = std::env::var_os("FOLDLAB_CACHE") {
        config.cache_dir = Some(PathBuf::from(dir));
    }
    let cache = match &config.cache_dir {
        Some(d) => cache::Cache::new(Some(d.clone())),
        None => cache::Cache::disabled(),
    };
    let (value, code) = match commands::run(cli.command, &config, &cache) {
        Ok(out) => out,
        Err(e) => (json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), e.exit_code() as u8),
    };
    let text = match config.output {
        Output::Json => value.to_string(),
        Output::Pretty => serde_json::to_string_pretty(&value).expect("json value"),
    };
    // a closed pipe on stdout is not an error of the computation
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
