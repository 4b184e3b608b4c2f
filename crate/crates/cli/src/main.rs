fn main() {
    std::process::exit(spinor_torsion_cli::run(std::env::args_os()));
}
