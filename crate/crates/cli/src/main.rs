use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use oddcycles_cli::{exit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if !outcome.stdout.is_empty() {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, &outcome.stdout).map_err(|e| format!("{}: {e}", path.display())),
            None => std::io::stdout().write_all(outcome.stdout.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INPUT as u8);
        }
    }
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
