fn main() {
    std::process::exit(lipext_cli::main_with_args(std::env::args_os()));
}
