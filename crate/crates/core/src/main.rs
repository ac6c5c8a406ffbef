fn main() {
    std::process::exit(spheretorus::shell::cli::run(std::env::args_os()));
}
