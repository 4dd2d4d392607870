fn main() {
    std::process::exit(clopen::cli::run(std::env::args_os()));
}
