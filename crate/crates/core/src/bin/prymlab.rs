fn main() {
    std::process::exit(prymlab::cli::run(std::env::args_os()));
}
