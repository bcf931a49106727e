fn main() {
    std::process::exit(hilbert_lattice::cli::main_with_args(std::env::args_os()));
}
