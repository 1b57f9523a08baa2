fn main() {
    std::process::exit(capinf_cli::main_with(std::env::args_os()));
}
