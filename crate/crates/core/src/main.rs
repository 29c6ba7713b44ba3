fn main() {
    std::process::exit(wirenet::cli::main_with_args(std::env::args_os()));
}
