use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(imoments_cli::run(std::env::args_os()))
}
