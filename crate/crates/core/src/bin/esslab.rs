fn main() {
    std::process::exit(esslab::cli::run(std::env::args_os()));
}
