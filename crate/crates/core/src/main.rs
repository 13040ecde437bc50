fn main() {
    std::process::exit(sir_series::cli::run(std::env::args_os()));
}
