use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use qframe_cli::app::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
