use std::io::Write;
use std::process::ExitCode;

use mostset::{run, FileSystem, MAX_STATES_VAR};

fn main() -> ExitCode {
    let limit = std::env::var(MAX_STATES_VAR).ok();
    let outcome = run(std::env::args_os(), &FileSystem, limit.as_deref());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
