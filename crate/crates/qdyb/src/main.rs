fn main() {
    std::process::exit(qdyb::cli::run(std::env::args_os()));
}
