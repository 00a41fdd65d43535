fn main() {
    std::process::exit(hdrelay::cli::run(std::env::args()));
}
