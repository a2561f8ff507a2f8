use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fracpart::run(std::env::args_os()))
}
