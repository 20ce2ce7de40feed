fn main() {
    std::process::exit(kst_core::cli::run(std::env::args_os()));
}
