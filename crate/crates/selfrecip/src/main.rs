fn main() {
    std::process::exit(selfrecip::cli::run());
}
