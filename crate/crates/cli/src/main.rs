use std::process::ExitCode;

use clap::Parser;

use mincomp_cli::args::Cli;
use mincomp_cli::ops;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Prints help/version (exit 0) or the usage error (exit 2).
        Err(e) => e.exit(),
    };
    let config = match cli.config.resolve() {
        Ok(config) => config,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.exit_code());
        }
    };
    if let Some(threads) = config.threads {
        // Sizes the worker pool for spectra scans; a second call in the
        // same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match ops::dispatch(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
