fn main() {
    std::process::exit(boolcube::cli::run(std::env::args_os()));
}
