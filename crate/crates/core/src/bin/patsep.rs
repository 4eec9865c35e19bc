fn main() {
    std::process::exit(patsep::cli::run(std::env::args_os()));
}
