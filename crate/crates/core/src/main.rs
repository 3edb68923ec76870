fn main() {
    std::process::exit(betweenness::cli::run(std::env::args_os()));
}
