fn main() {
    std::process::exit(pathhom::cli::run(std::env::args_os()));
}
