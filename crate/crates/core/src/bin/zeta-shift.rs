fn main() {
    std::process::exit(zeta_shift::cli::main_with(std::env::args_os()));
}
