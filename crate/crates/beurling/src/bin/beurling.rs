fn main() {
    std::process::exit(beurling::cli::main());
}
