fn main() {
    std::process::exit(delta122::cli::run());
}
