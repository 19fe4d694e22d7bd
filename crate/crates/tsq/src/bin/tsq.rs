fn main() {
    std::process::exit(tsq::cli::run(std::env::args_os()));
}
