use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ccsc_cli::run(std::env::args_os()))
}
