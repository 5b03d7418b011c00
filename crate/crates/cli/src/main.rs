fn main() {
    std::process::exit(dtqw_cli::main_with_args(std::env::args_os()));
}
