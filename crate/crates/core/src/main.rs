fn main() {
    std::process::exit(critcycle::cli::run(std::env::args_os()));
}
