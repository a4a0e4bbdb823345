fn main() {
    std::process::exit(krein_kernels::cli::main());
}
