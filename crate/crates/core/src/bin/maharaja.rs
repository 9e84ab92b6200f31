fn main() {
    std::process::exit(maharaja::cli::main());
}
