fn main() {
    std::process::exit(netrobust::cli::run());
}
