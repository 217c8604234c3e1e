fn main() {
    std::process::exit(circlefit::cli::run(std::env::args_os()));
}
