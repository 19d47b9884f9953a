fn main() {
    std::process::exit(exbeta::cli::run(std::env::args_os()));
}
