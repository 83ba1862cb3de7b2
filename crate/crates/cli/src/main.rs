fn main() {
    std::process::exit(extremal_cli::main_with_args(std::env::args_os()));
}
