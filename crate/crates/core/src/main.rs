use std::process::ExitCode;

fn main() -> ExitCode {
    tlent::cli::run()
}
