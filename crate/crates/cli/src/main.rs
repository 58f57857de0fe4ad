use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use optomech_cli::{execute, load_config};

/// Optomechanical cavity simulations driven by a JSON run configuration.
#[derive(Parser)]
#[command(name = "optomech", version)]
struct Args {
    /// Run configuration (JSON).
    config: PathBuf,
    /// Write tables here instead of the configured output_dir.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Suppress the list of written files.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = load_config(&args.config).and_then(|mut spec| {
        if let Some(dir) = args.output_dir {
            spec.output_dir = dir;
        }
        execute(&spec)
    });
    match result {
        Ok(paths) => {
            if !args.quiet {
                for p in paths {
                    println!("{}", p.display());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("optomech: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
