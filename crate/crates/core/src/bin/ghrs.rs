use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = ghrs::cli::run(std::env::args_os());
    std::io::stdout().write_all(result.stdout.as_bytes()).ok();
    std::io::stderr().write_all(result.stderr.as_bytes()).ok();
    ExitCode::from(result.status as u8)
}
