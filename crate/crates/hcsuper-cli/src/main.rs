fn main() {
    std::process::exit(hcsuper_cli::run(std::env::args_os()));
}
