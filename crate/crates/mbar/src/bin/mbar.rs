fn main() {
    std::process::exit(mbar::cli::run(std::env::args().collect()));
}
