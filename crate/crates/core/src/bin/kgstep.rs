fn main() {
    std::process::exit(kgstep::cli::main_with_args(std::env::args_os()));
}
