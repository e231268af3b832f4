fn main() {
    std::process::exit(kmaha_cli::run());
}
