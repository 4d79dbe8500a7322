fn main() {
    std::process::exit(nahm5::cli::run(std::env::args_os()));
}
