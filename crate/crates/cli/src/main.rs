use std::io::Write;
use std::process::ExitCode;

use genus2_cli::{configure_threads, run_args, EXIT_USAGE};

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let (outcome, err) = run_args(std::env::args_os());
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    if let Some(e) = err {
        eprint!("{e}");
    }
    ExitCode::from(outcome.exit as u8)
}
