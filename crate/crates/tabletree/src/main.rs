fn main() {
    std::process::exit(tabletree::cli::run());
}
