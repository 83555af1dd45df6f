fn main() {
    std::process::exit(hankel::cli::run(std::env::args_os()));
}
