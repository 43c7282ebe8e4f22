fn main() {
    std::process::exit(frobx::cli::run_command(std::env::args_os()));
}
