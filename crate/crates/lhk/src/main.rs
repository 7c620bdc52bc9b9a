use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lhk::{parallel, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let code = match parallel::threads().and_then(|n| parallel::with_threads(n, || run(&cli.command))) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.report.to_json().as_bytes());
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("lhk: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
