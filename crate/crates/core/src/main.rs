fn main() {
    std::process::exit(twisted_jacquet::cli::main_with_args(std::env::args_os()));
}
