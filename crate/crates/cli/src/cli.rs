use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Format;

#[derive(Debug, Parser)]
#[command(name = "jonescope", version, about = "Colored Jones polynomials, their expansions and growth rates")]
pub struct Cli {
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Decimal digits for numeric evaluation (overrides JONESCOPE_PRECISION).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Format of the main output.
    #[arg(long, global = true, value_enum)]
    pub out: Option<Format>,
    /// Shorthand for `--out json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the main output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Also write the tabular part of the result as CSV.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct KnotArgs {
    /// Corpus knot name (see `corpus`).
    #[arg(long, conflicts_with_all = ["morse", "pd"])]
    pub knot: Option<String>,
    /// Morse word file.
    #[arg(long, conflicts_with = "pd")]
    pub morse: Option<PathBuf>,
    /// PD code file.
    #[arg(long)]
    pub pd: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Colored Jones polynomial by the state sum.
    Jones {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        n: usize,
        /// Also evaluate at q = e^{2πi/M}.
        #[arg(long, value_name = "M")]
        root: Option<u64>,
        /// Cross-check against the transfer-matrix engine.
        #[arg(long)]
        check: bool,
    },
    /// Cyclotomic coefficients H_{K,k}.
    Cyclotomic {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        /// Reconstruct J_{K,n} for n ≤ max_k + 1.
        #[arg(long)]
        verify: bool,
    },
    /// R_{K,0} against the Taylor series of 1/Δ_K(e^x).
    Mmr {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Loop expansion R_{K,p}, its numerator P_{K,p}, and the cyclotomic comparison.
    Loop {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// (1/n) log|J_{K,n+m}(e^{2πi/n})|.
    #[command(name = "scan-near1")]
    ScanNear1 {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        m: usize,
        #[arg(long = "N", default_value_t = 20)]
        n_max: usize,
    },
    /// f_{K,np}(2πi·p/m) through the symmetry reduction.
    #[command(name = "scan-near2")]
    ScanNear2 {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "N", default_value_t = 12)]
        n_max: usize,
        /// Largest color computed directly for comparison.
        #[arg(long, default_value_t = 27)]
        direct_cap: usize,
    },
    /// Norm and degree bounds, and the growth bound at given α.
    #[command(name = "bound-check")]
    BoundCheck {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// α as `re,im`; may repeat.
        #[arg(long, value_name = "RE,IM")]
        alpha: Vec<String>,
        #[arg(long, default_value_t = 20)]
        alpha_n_max: usize,
    },
    /// Lobachevsky function Λ(θ).
    Lob {
        #[arg(long, allow_negative_numbers = true)]
        theta: Vec<f64>,
    },
    /// Maximum of |ev_n R_+(n; a, b, k)|.
    Rmax {
        /// Comma-separated list.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Search for the true maximum: every triple for n ≤ 500, a
        /// neighborhood of the closed-form triple beyond.
        #[arg(long)]
        brute: bool,
    },
    /// Ideal octahedron volume against 2π·r_+.
    Octa {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        kappa: f64,
    },
    /// Borromean rings: exact polynomial or growth scan.
    Borromean {
        #[arg(long, value_delimiter = ',')]
        scan: Vec<usize>,
        #[arg(long)]
        exact: Option<usize>,
    },
    /// Sequences from a q-difference equation and their bounds.
    Qholo {
        /// Recurrence file; the product (1+q)…(1+qⁿ) is used when absent.
        #[arg(long)]
        eq: Option<PathBuf>,
        /// JSON list of initial values in the polynomial schema.
        #[arg(long)]
        init: Option<PathBuf>,
        #[arg(long = "N", default_value_t = 20)]
        n_max: usize,
        #[arg(long)]
        verify: bool,
        /// Compare with colored Jones values of a corpus knot instead.
        #[arg(long)]
        knot: Option<String>,
    },
    /// Run named acceptance checks.
    Verify {
        /// Check name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        knot: Option<String>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Bundled knots.
    Corpus,
    /// Rerun the configuration embedded in an earlier JSON output or config file.
    Replay { file: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Jones { .. } => "jones",
            Command::Cyclotomic { .. } => "cyclotomic",
            Command::Mmr { .. } => "mmr",
            Command::Loop { .. } => "loop",
            Command::ScanNear1 { .. } => "scan-near1",
            Command::ScanNear2 { .. } => "scan-near2",
            Command::BoundCheck { .. } => "bound-check",
            Command::Lob { .. } => "lob",
            Command::Rmax { .. } => "rmax",
            Command::Octa { .. } => "octa",
            Command::Borromean { .. } => "borromean",
            Command::Qholo { .. } => "qholo",
            Command::Verify { .. } => "verify",
            Command::Corpus => "corpus",
            Command::Replay { .. } => "replay",
        }
    }
}
