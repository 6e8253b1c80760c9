use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use donaldson::cli::{self, Catalog, CliError, Format, Outcome};

#[derive(Parser)]
#[command(name = "donaldson", version, about = "Exact Donaldson/Seiberg-Witten bookkeeping for 4-manifolds")]
struct Args {
    /// Catalog document; the built-in catalog is used when absent.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Donaldson series of a simple-type manifold at (w, h).
    Series {
        manifold: String,
        /// JSON coordinate array, JSON object label -> coefficient, or 0.
        #[arg(long, default_value = "0")]
        w: String,
        #[arg(long)]
        h: String,
    },
    /// Blow up once.
    Blowup { manifold: String },
    /// Blow down along an exceptional class.
    Blowdown {
        manifold: String,
        #[arg(long)]
        e: String,
    },
    /// Betti numerics of repeated fiber sums W # V # ... # V.
    Fibersum {
        w: String,
        v: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Glue relative series across a tight fiber and check the leading factorization.
    Glue { name: String },
    /// Canonical-class constraints on a Lefschetz fibration.
    Constraints {
        fibration: String,
        #[arg(long)]
        class: Option<String>,
    },
    /// Search for a fiber-sum construction certificate.
    Plan {
        fibration: String,
        /// hypersurface or knot
        #[arg(long, default_value = "hypersurface")]
        mode: String,
    },
    /// Growth constant of a Floer pairing model along the fiber.
    Asymptotics { model: String },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Check every record against its construction invariants.
    Validate,
    /// Print the catalog document.
    Dump,
}

fn run(args: &Args) -> Result<Outcome, CliError> {
    let cat = match &args.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::builtin(),
    };
    match &args.command {
        Command::Series { manifold, w, h } => cli::cmd_series(&cat, manifold, w, h),
        Command::Blowup { manifold } => cli::cmd_blowup(&cat, manifold),
        Command::Blowdown { manifold, e } => cli::cmd_blowdown(&cat, manifold, e),
        Command::Fibersum { w, v, times } => cli::cmd_fibersum(&cat, w, v, *times),
        Command::Glue { name } => cli::cmd_glue(&cat, name),
        Command::Constraints { fibration, class } => cli::cmd_constraints(&cat, fibration, class.as_deref()),
        Command::Plan { fibration, mode } => cli::cmd_plan(&cat, fibration, cli::parse_mode(mode)?),
        Command::Asymptotics { model } => cli::cmd_asymptotics(&cat, model),
        Command::Catalog { action: CatalogAction::Validate } => Ok(cli::cmd_catalog_validate(&cat)),
        Command::Catalog { action: CatalogAction::Dump } => Ok(Outcome {
            document: serde_json::to_value(&cat).expect("serializable"),
            status: cli::ExitStatus::Success,
        }),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let (text, code) = match run(&args) {
        Ok(outcome) => (outcome.render(format), outcome.status as i32),
        Err(e) => {
            eprintln!("error: {e}");
            (cli::render(&e.document(), format), e.exit_code())
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
