use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ffsubsum", version, about = "Exact subset-sum counts over finite fields")]
pub struct Cli {
    /// Characteristic of the field.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Extension degree; the field has p^e elements.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for the sampled exclusion sets used by `verify`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// N(k, b, D) for one target.
    Count(CountArgs),
    /// N(k, b, D) for every k and b.
    Table(TableArgs),
    /// Check the formulas against the DP oracle and each other.
    Verify(VerifyArgs),
    /// Reed-Solomon codes over D.
    #[command(subcommand)]
    Rs(RsCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// Formulas, falling back to the DP oracle above 8 excluded points.
    ClosedForm,
    Oracle,
    /// Both; disagreement is a failure.
    Both,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Excluded elements, comma separated (e.g. `0,g^1,[1,1]`).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub exclude: String,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub b: String,
    #[arg(long, value_enum, default_value_t = MethodChoice::ClosedForm)]
    pub method: MethodChoice,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value = "")]
    pub exclude: String,
    #[arg(long)]
    pub k_min: Option<u64>,
    #[arg(long)]
    pub k_max: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 16)]
    pub max_q: u32,
    #[arg(long, default_value_t = 3)]
    pub max_c: usize,
    /// Corrupt the formula counts to confirm the checks fail.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NMode {
    /// Evaluate at every element of F_q.
    Full,
    /// Evaluate at the nonzero elements.
    Punctured,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[arg(long, value_enum, default_value_t = NMode::Full, conflicts_with = "points")]
    pub n_mode: NMode,
    /// Explicit evaluation points, comma separated.
    #[arg(long)]
    pub points: Option<String>,
    /// Code dimension.
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum RsCommand {
    /// Degree, distance bounds and deep-hole verdict of a word.
    Classify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        word: String,
    },
    /// Deep holes of degree k + 1 for D = F_q or F_q^*.
    Scan {
        #[arg(long, value_enum, default_value_t = NMode::Full)]
        n_mode: NMode,
        #[arg(long)]
        k: usize,
    },
    /// Exact distance from a word to the code.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        word: String,
    },
    /// Evaluate a message polynomial (coefficients low degree first).
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}
