fn main() {
    std::process::exit(nslct::cli::main_with_args(std::env::args_os()));
}
