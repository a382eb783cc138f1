fn main() -> std::process::ExitCode {
    gaudin_rotor::cli::main_entry()
}
