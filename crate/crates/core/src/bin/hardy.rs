fn main() {
    std::process::exit(clifford_hardy::cli::main_with_args(std::env::args_os()));
}
