use std::process::ExitCode;

fn main() -> ExitCode {
    spherelab_cli::main_entry()
}
