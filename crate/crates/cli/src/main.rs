use std::process::ExitCode;

fn main() -> ExitCode {
    tickwalk_cli::run()
}
