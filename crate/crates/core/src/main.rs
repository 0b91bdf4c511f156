fn main() {
    std::process::exit(cutlocus::cli::run());
}
