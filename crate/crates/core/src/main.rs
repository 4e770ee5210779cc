fn main() {
    std::process::exit(hk_core::cli::main_with(std::env::args_os()));
}
