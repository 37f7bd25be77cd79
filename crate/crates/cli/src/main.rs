use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Failure;

/// Dual gear graphs: spectra, transplantation, Markov conjugators and zeta checks.
#[derive(Debug, Parser)]
#[command(name = "isogear", version)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a gear, its dual, a fixture pair or a digraph export.
    Build(BuildArgs),
    /// Scan the quantum spectrum of a graph file into CSV.
    Spectrum(SpectrumArgs),
    /// Compare two spectra (CSV files or graph files to be scanned).
    Compare(CompareArgs),
    /// Markov operator of a subdivided integer-length graph.
    Markov(MarkovArgs),
    /// Build and check the conjugator between a gear and its dual.
    Conjugate(ConjugateArgs),
    /// Randomized test of det L(z) equality for two digraphs.
    Zeta(ZetaArgs),
    /// Check the explicit 12x12 intertwiner on the six-tooth digraph pair.
    ZetaConjugator(ZetaConjugatorArgs),
    /// Search for an isomorphism between two digraphs.
    Isomorphic(IsomorphicArgs),
}

#[derive(Debug, Args)]
pub struct GearArgs {
    /// Number of teeth; must match the number of lengths.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated side lengths.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Vec<f64>,
    /// Build the dual gear.
    #[arg(long)]
    pub dual: bool,
    /// Per-tooth attachment, comma-separated `tail`/`head` (overrides the uniform pattern).
    #[arg(long, value_delimiter = ',')]
    pub attach: Vec<String>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub gear: GearArgs,
    /// Write one of the unfolded isospectral pairs (`a` or `b`) instead of a gear.
    #[arg(long, conflicts_with_all = ["dual", "digraph", "fig6"])]
    pub fig3: Option<String>,
    /// Write the six-tooth digraph pair instead of a gear.
    #[arg(long, conflicts_with = "digraph")]
    pub fig6: bool,
    /// Export the subdivided gear as a digraph with the given tooth orientation (`outward` or `aligned`).
    #[arg(long)]
    pub digraph: Option<String>,
    /// Output file; for pairs, a prefix completed by `-left` / `-right`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Tooth weight, decimal or `p/q`.
    #[arg(long, default_value = "1")]
    pub w: String,
    /// Upper end of the wavenumber window.
    #[arg(long)]
    pub k_max: Option<f64>,
    /// Scan parameter overrides, e.g. `delta=0.005,rank_tol=1e-10`.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub scan: ScanArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[command(flatten)]
    pub scan: ScanArgs,
    /// Relative tolerance on eigenvalue gaps.
    #[arg(long, default_value = "1e-8")]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MarkovArgs {
    pub graph: PathBuf,
    /// Tooth weight, e.g. `3/2`.
    #[arg(long, default_value = "1")]
    pub w: String,
    #[arg(long, default_value = "rational")]
    pub mode: String,
    /// Also scan the quantum spectrum up to this wavenumber and check it against the Markov spectrum.
    #[arg(long)]
    pub crosscheck_k_max: Option<f64>,
    #[arg(long, default_value = "1e-8")]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConjugateArgs {
    #[command(flatten)]
    pub gear: GearArgs,
    #[arg(long, default_value = "1")]
    pub w: String,
    #[arg(long, default_value = "rational")]
    pub mode: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// `eta` (y = 0) or `full`.
    #[arg(long, default_value = "eta")]
    pub restriction: String,
    /// Also expand both determinants exactly and compare them (at most 12 vertices).
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZetaConjugatorArgs {
    /// Digraph files; defaults to the built-in six-tooth pair.
    #[arg(num_args = 2)]
    pub graphs: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IsomorphicArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = match cli.command {
        Command::Build(args) => commands::build(args),
        Command::Spectrum(args) => commands::spectrum(args),
        Command::Compare(args) => commands::compare(args),
        Command::Markov(args) => commands::markov(args),
        Command::Conjugate(args) => commands::conjugate(args),
        Command::Zeta(args) => commands::zeta(args),
        Command::ZetaConjugator(args) => commands::zeta_conjugator(args),
        Command::Isomorphic(args) => commands::isomorphic(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
