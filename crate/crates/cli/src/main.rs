use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use posetrep::{app, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { app::EXIT_USAGE } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli, &mut std::io::stdin().lock()) {
        Ok(out) => {
            let _ = std::io::stdout().lock().write_all(out.output.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
