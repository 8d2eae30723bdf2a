fn main() {
    std::process::exit(naw_core::cli::main_with(std::env::args_os()));
}
