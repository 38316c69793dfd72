fn main() {
    std::process::exit(bisetplus::cli::run());
}
