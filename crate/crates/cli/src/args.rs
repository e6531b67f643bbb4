use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "mdeg", version, about = "Multidegrees, generic initial ideals and polymatroid checks for multigraded ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Session file; `-` reads standard input.
    pub file: String,
    /// Ideal to use; defaults to the first one declared.
    #[arg(long)]
    pub ideal: Option<String>,
    /// grevlex, lex, diag or weights:<row>;<row>...
    #[arg(long, default_value = "grevlex")]
    pub order: String,
    /// Override the declared field: QQ or a prime.
    #[arg(long)]
    pub field: Option<String>,
    /// Canonical JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct GinArgs {
    /// Independent random coordinate changes.
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Base seed; the MDEG_SEED environment variable takes precedence.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// K-polynomial of S/I.
    Kpoly(Input),
    /// Multidegree polynomial C(S/I).
    Cee(Input),
    /// G-multidegree: divisibility-minimal terms of K(S/I; 1-t).
    Gee(Input),
    /// Arithmetic multidegree of a monomial ideal, or of in(I) otherwise.
    Arith(Input),
    /// Mixed multiplicities of the multiprojective scheme.
    Geom(Input),
    /// Multigraded generic initial ideal.
    Gin {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        gin: GinArgs,
    },
    /// Structure of gin(I): components, Cohen-Macaulay radical, projection lengths.
    GinReport {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        gin: GinArgs,
    },
    /// Contract onto the given blocks and print the result as a session file.
    Project {
        #[command(flatten)]
        input: Input,
        /// Comma-separated one-based block indices.
        #[arg(long)]
        blocks: String,
    },
    /// Cartwright-Sturmfels test.
    CsCheck {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        gin: GinArgs,
        /// Random weight orders used to confirm squarefree initial ideals.
        #[arg(long, default_value_t = 0)]
        sample_orders: usize,
        /// Two more sampled orders on top of --sample-orders.
        #[arg(long)]
        paranoid: bool,
    },
    /// Standardize the grading and verify codim, K, C and initial ideals.
    Standardize {
        #[command(flatten)]
        input: Input,
        /// Print the standardized ring and ideal as a session file.
        #[arg(long)]
        emit_ring: bool,
    },
    /// Exchange-axiom test on supp C(I) or on a point list.
    PolymatroidCheck(PointsInput),
    /// Saturated Newton polytope test on C(I) or on a point list.
    SnpCheck(PointsInput),
    /// Determinantal ideals of a generic m x n matrix.
    Det {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Skip the Groebner pipeline.
        #[arg(long)]
        formulas_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert function of in(I) by counting against the K-polynomial series.
    HfOracle {
        #[command(flatten)]
        input: Input,
        /// Comma-separated bound per grading coordinate.
        #[arg(long)]
        bound: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PointsInput {
    /// Session file; `-` reads standard input.
    pub file: Option<String>,
    /// Use supp C of this ideal.
    #[arg(long, value_name = "IDEAL")]
    pub from_cee: Option<String>,
    /// File with one point per line, e.g. `(2,0)` or `2 0`.
    #[arg(long, value_name = "FILE", conflicts_with = "from_cee")]
    pub points: Option<String>,
    #[arg(long, default_value = "grevlex")]
    pub order: String,
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub json: bool,
}
