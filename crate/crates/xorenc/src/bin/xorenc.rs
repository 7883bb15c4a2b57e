fn main() {
    std::process::exit(xorenc::cli::run_cli(std::env::args()));
}
