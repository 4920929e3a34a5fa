fn main() {
    std::process::exit(lattice_dirac::cli::run(std::env::args_os()));
}
