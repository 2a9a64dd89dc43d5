fn main() {
    std::process::exit(pdcert::cli::run(std::env::args_os()));
}
