fn main() {
    std::process::exit(nucleus_core::cli::run(std::env::args_os()));
}
