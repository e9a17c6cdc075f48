fn main() {
    std::process::exit(recsunit::cli::main());
}
