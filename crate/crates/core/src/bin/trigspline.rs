fn main() {
    std::process::exit(trigspline::cli::main_with_args(std::env::args_os()));
}
