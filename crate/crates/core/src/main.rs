fn main() {
    std::process::exit(flagtriad::cli::run(std::env::args_os()));
}
