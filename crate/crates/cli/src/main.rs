fn main() {
    std::process::exit(prime_lines_cli::run(std::env::args_os()));
}
