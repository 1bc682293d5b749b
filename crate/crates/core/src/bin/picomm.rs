fn main() {
    std::process::exit(picomm::cli::run(std::env::args_os()));
}
