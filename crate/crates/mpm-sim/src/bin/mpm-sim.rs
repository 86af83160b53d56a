use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(mpm_sim::cli::run_cli() as u8)
}
