fn main() {
    std::process::exit(rinehart::cli::run(std::env::args_os()));
}
