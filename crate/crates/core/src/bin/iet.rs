fn main() {
    std::process::exit(ietkit::cli::run(std::env::args_os()));
}
