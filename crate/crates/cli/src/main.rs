fn main() {
    std::process::exit(hartmann_cli::main_with_args(std::env::args_os()));
}
