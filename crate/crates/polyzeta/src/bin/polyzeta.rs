fn main() {
    std::process::exit(polyzeta::cli::run());
}
