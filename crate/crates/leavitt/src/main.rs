use std::process::ExitCode;

fn main() -> ExitCode {
    leavitt::cli::main()
}
