fn main() {
    std::process::exit(oddminor::cli::main());
}
