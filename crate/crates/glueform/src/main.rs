use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use glueform::cli;

/// Exact De Rham calculus for spaces presented by two polynomial plots.
#[derive(Parser)]
#[command(name = "glueform", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the plots, witnesses and charts of a presentation file
    Check { file: PathBuf },
    /// Compute truncated De Rham cohomology with the exactness audit
    Cohomology {
        file: PathBuf,
        /// Coefficient degree bound D (default: the file's [compute] bound)
        #[arg(long)]
        bound: Option<u32>,
        /// Form degree k; may be repeated (default: the file's [compute] degrees)
        #[arg(long = "degree")]
        degrees: Vec<usize>,
    },
    /// Evaluate the difference morphism on a pair of forms and report the
    /// glue verdict
    Delta {
        file: PathBuf,
        /// Form file for the first plot's domain
        #[arg(long)]
        mu: PathBuf,
        /// Form file for the second plot's domain
        #[arg(long)]
        nu: PathBuf,
    },
    /// Randomized falsification of the presentation's identities
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("error: cannot read {}: {e}", path.display()))
}

fn run() -> Result<cli::CmdOutcome, String> {
    let args = Args::parse();
    match args.command {
        Command::Check { file } => {
            let text = read(&file)?;
            Ok(cli::check(&text, &file.display().to_string()))
        }
        Command::Cohomology {
            file,
            bound,
            degrees,
        } => {
            let text = read(&file)?;
            Ok(cli::cohomology(
                &text,
                &file.display().to_string(),
                bound,
                &degrees,
            ))
        }
        Command::Delta { file, mu, nu } => {
            let text = read(&file)?;
            let mu_text = read(&mu)?;
            let nu_text = read(&nu)?;
            Ok(cli::delta(
                &text,
                &file.display().to_string(),
                &mu_text,
                &nu_text,
            ))
        }
        Command::Sample {
            file,
            samples,
            seed,
        } => {
            let text = read(&file)?;
            Ok(cli::sample(&text, &file.display().to_string(), samples, seed))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(outcome) => {
            print!("{}", outcome.report);
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}
