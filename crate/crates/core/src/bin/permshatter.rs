fn main() {
    std::process::exit(permshatter::cli::run(std::env::args_os()));
}
