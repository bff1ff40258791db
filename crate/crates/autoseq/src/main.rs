fn main() {
    std::process::exit(autoseq::cli::run());
}
