use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use meritfuse_core::cli::{self, Overrides, PrepAction};
use meritfuse_core::scoreio::render_report;
use meritfuse_core::{Error, Method, ObjectiveVariant};

#[derive(Parser)]
#[command(name = "meritfuse", version, about = "Weighted late fusion of classifier scores")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Default)]
struct ManifestArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "grid-step")]
    grid_step: Option<f64>,
    #[arg(long)]
    objective: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Metrics of individual models.
    Evaluate {
        #[arg(long, required = true)]
        scores: Vec<PathBuf>,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fuse score files under fixed weights.
    Fuse {
        #[arg(long, required = true)]
        scores: Vec<PathBuf>,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search fusion weights with one method.
    Optimize {
        #[command(flatten)]
        args: ManifestArgs,
        /// Also write the best-so-far trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run every method and write a comparison table.
    Compare {
        #[command(flatten)]
        args: ManifestArgs,
    },
    /// Text preparation on JSON Lines sample files.
    Prep {
        #[command(subcommand)]
        action: PrepCommand,
    },
}

#[derive(Subcommand)]
enum PrepCommand {
    Clean {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    Balance {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    Augment {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "it")]
        source: String,
        #[arg(long, default_value = "en")]
        target: String,
    },
}

impl ManifestArgs {
    fn overrides(&self) -> Result<Overrides, Error> {
        let usage = |e: Error| Error::Usage(e.to_string());
        Ok(Overrides {
            method: self.method.as_deref().map(str::parse::<Method>).transpose().map_err(usage)?,
            seed: self.seed,
            grid_step: self.grid_step,
            objective: self
                .objective
                .as_deref()
                .map(str::parse::<ObjectiveVariant>)
                .transpose()
                .map_err(usage)?,
            out: self.out.clone(),
        })
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Evaluate { scores, labels, out } => {
            let rows = cli::evaluate(&scores, &labels, out.as_deref())?;
            print!("{}", render_report(&rows));
        }
        Command::Fuse {
            scores,
            labels,
            weights,
            out,
        } => {
            let w = cli::parse_weights(&weights)?;
            cli::fuse_files(&scores, labels.as_deref(), &w, &out)?;
        }
        Command::Optimize { args, trace } => {
            let (result, row) = cli::optimize_manifest(&args.manifest, &args.overrides()?)?;
            if let Some(path) = trace {
                result.write_trace(path)?;
            }
            print!("{}", render_report(std::slice::from_ref(&row)));
        }
        Command::Compare { args } => {
            let rows = cli::compare_manifest(&args.manifest, &args.overrides()?)?;
            print!("{}", render_report(&rows));
        }
        Command::Prep { action } => {
            let (action, input, out) = match action {
                PrepCommand::Clean { input, out } => (PrepAction::Clean, input, out),
                PrepCommand::Balance { input, out, seed } => (PrepAction::Balance { seed }, input, out),
                PrepCommand::Augment {
                    input,
                    out,
                    source,
                    target,
                } => (PrepAction::Augment { source, target }, input, out),
            };
            let n = cli::prep(&action, &input, &out)?;
            eprintln!("wrote {n} samples to {}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
