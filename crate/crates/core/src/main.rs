fn main() {
    std::process::exit(citedist::cli::main_with_args(std::env::args_os()));
}
