use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Verification and search tools for half-flag-transitive 2-designs.
#[derive(Parser, Debug)]
#[command(name = "halfflag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a design and its group: parameters, flag orbits, half-flag and primitivity.
    Verify(VerifyArgs),
    /// Enumerate admissible (v, b, r, k, λ) for a point-stabilizer order.
    Sieve(SieveArgs),
    /// Run Steps 1-4 on rows of the candidate table.
    Classify(ClassifyArgs),
    /// Subgroups of given indices with their orbit lengths.
    Subgroups(SubgroupsArgs),
    /// Search product actions K wr S2 for designs.
    ProductSearch(ProductArgs),
    /// Re-derive and check every catalog entry.
    CatalogVerify(CatalogArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct GroupSource {
    /// Group file.
    #[arg(long, conflicts_with = "builtin")]
    pub group: Option<PathBuf>,
    /// Built-in example or fixture group name (e.g. psl29-10, biplane-16, hs-176-d1).
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: GroupSource,
    /// Design file (`v n` then `block ...` lines).
    #[arg(long)]
    pub design: Option<PathBuf>,
    /// Base block set files; the design is the union of their orbits.
    #[arg(long = "base")]
    pub bases: Vec<PathBuf>,
    #[arg(long)]
    pub assert_half_flag: bool,
    #[arg(long)]
    pub assert_flag: bool,
    #[arg(long)]
    pub assert_primitive: bool,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SieveArgs {
    #[arg(long)]
    pub v: u64,
    #[arg(long)]
    pub stab_order: u64,
    /// Nontrivial subdegrees, comma separated; gives r_max.
    #[arg(long, value_delimiter = ',')]
    pub subdegrees: Vec<u64>,
    /// Keep only tuples with r/gcd(r,2λ) dividing r_max (needs --subdegrees).
    #[arg(long)]
    pub rmax_filter: bool,
    /// File of b values to compare against (any integers; `#` lines ignored).
    #[arg(long)]
    pub compare: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Parents up to this order get exhaustive subgroup enumeration.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub parent_order_bound: u64,
    /// Largest subgroup order targeted search aims for.
    #[arg(long, default_value_t = 4000, value_parser = clap::value_parser!(u64).range(1..))]
    pub target_order_bound: u64,
    /// Random attempts per index in targeted search.
    #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    pub attempts: u64,
    /// Seconds per index in targeted search.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub time_limit: u64,
    #[arg(long, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub orbit_cap: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_pairs: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Row to run: case number, fixture name or `<group>-<v>` (repeatable).
    #[arg(long = "case", required_unless_present = "all")]
    pub cases: Vec<String>,
    #[arg(long, conflicts_with = "cases")]
    pub all: bool,
    /// Fixture catalog directory (default: $HALFFLAG_FIXTURES or the bundled catalog).
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    /// Run targeted subgroup search for large parents where no fixture covers an index.
    #[arg(long)]
    pub search: bool,
    /// Skip the r_max divisibility filter after Step 1.
    #[arg(long)]
    pub no_rmax_filter: bool,
    /// Directory for found designs and base blocks.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SubgroupsArgs {
    #[command(flatten)]
    pub source: GroupSource,
    /// Indices b, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub index: Vec<u64>,
    /// Verified subgroup files (with an order line) to use instead of searching.
    #[arg(long = "fixture")]
    pub fixtures: Vec<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    /// Component degree (odd).
    #[arg(long, default_value_t = 5)]
    pub v0: usize,
    /// Only this component (e.g. S5, A5, AGL(1,5)).
    #[arg(long)]
    pub component: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "md")]
    pub format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => commands::verify(a),
        Command::Sieve(a) => commands::sieve(a),
        Command::Classify(a) => commands::classify(a),
        Command::Subgroups(a) => commands::subgroups(a),
        Command::ProductSearch(a) => commands::product_search(a),
        Command::CatalogVerify(a) => commands::catalog_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code_for(&e))
        }
    }
}
