fn main() {
    std::process::exit(tubecover::cli::run(std::env::args_os()));
}
