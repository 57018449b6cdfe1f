fn main() {
    std::process::exit(sphere_riesz::cli::main_with_args(std::env::args_os()));
}
