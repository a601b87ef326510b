use std::process::ExitCode;

fn main() -> ExitCode {
    hilbert_strata::cli::main_from_args(std::env::args_os())
}
