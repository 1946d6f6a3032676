fn main() {
    std::process::exit(dirac_wp::cli::main_with_args(std::env::args_os()));
}
