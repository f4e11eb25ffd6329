fn main() {
    std::process::exit(ramified::cli::main_with_args(std::env::args_os()));
}
