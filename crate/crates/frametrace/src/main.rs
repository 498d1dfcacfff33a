fn main() {
    std::process::exit(frametrace::cli::run(std::env::args_os()));
}
