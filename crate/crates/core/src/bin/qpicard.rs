fn main() {
    std::process::exit(quaternionic_picard::cli::run(std::env::args_os()));
}
