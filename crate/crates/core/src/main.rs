fn main() {
    std::process::exit(vilenkin::cli::main());
}
