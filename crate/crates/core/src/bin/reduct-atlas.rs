fn main() {
    std::process::exit(reduct_atlas::cli::main_with_args(std::env::args_os()));
}
