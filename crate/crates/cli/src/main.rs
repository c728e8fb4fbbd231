use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liechief::error::Error;
use liechief::format::{self, AnySpec};
use liechief::{catalog, suite, Limits};

#[derive(Parser)]
#[command(name = "liechief", version, about = "Exact chief series and cohomology checks for Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite on an algebra file or catalog entry.
    Check {
        /// Path to an algebra file, or the name of a catalog entry.
        algebra: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "LIECHIEF_SEED", default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest module dimension handed to the MeatAxe.
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print an entry in the algebra file format.
    Dump { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn resolve(arg: &str) -> Result<AnySpec, Error> {
    let path = Path::new(arg);
    if path.exists() {
        format::load(path)
    } else {
        catalog::entry(arg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            algebra,
            suite: id,
            seed,
            format,
            max_dim,
        } => {
            let mut limits = Limits::default();
            if let Some(d) = max_dim {
                limits.max_module_dim = d;
            }
            let report = match resolve(&algebra).and_then(|spec| suite::run_suite(&spec, &id, seed, &limits)) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::names() {
                    println!("{name}");
                }
                ExitCode::SUCCESS
            }
            CatalogAction::Dump { name } => match catalog::entry(&name) {
                Ok(spec) => {
                    println!("{}", spec.to_json());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            },
        },
    }
}
