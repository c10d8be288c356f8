fn main() {
    std::process::exit(sturmian_cli::run(std::env::args_os()));
}
