fn main() {
    std::process::exit(hyperstress::cli::run_cli(std::env::args_os()));
}
