use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = ringel_core::cli::run_command(std::env::args_os());
    ringel_core::cli::print_outcome(&outcome);
    ExitCode::from(outcome.code as u8)
}
