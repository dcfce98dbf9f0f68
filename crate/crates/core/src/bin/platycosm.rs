fn main() {
    std::process::exit(platycosm::cli::main());
}
