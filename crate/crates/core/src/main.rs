fn main() {
    std::process::exit(basis_designs::cli::run(std::env::args_os()));
}
