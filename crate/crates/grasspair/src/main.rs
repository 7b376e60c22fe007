fn main() {
    std::process::exit(grasspair::cli::run(std::env::args_os()));
}
