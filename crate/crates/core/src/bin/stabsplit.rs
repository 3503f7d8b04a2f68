fn main() {
    std::process::exit(stabsplit::cli::main_exit());
}
