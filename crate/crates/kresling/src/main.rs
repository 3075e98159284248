fn main() {
    std::process::exit(kresling::cli::run_from_env());
}
