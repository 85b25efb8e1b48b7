fn main() {
    std::process::exit(lyaprof::cli::run(std::env::args_os()));
}
