use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(brick14::cli::run(std::env::args()) as u8)
}
