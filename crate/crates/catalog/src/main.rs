fn main() {
    std::process::exit(k3fib_catalog::cli::run_cli(std::env::args_os()));
}
