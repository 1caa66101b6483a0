fn main() {
    let code = fuzzrisk::cli::main_with_env();
    std::process::exit(code);
}
