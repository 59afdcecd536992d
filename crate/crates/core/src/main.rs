fn main() {
    std::process::exit(contextuality::cli::main());
}
