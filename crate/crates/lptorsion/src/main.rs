fn main() {
    std::process::exit(lptorsion::cli::run(std::env::args_os()));
}
