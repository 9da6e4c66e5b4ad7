fn main() {
    std::process::exit(qutrit_mdc::cli::main_with_args(std::env::args_os()));
}
