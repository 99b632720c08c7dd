fn main() {
    std::process::exit(mfbounds::cli::parse_and_dispatch(std::env::args()));
}
