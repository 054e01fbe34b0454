fn main() {
    std::process::exit(dimcalc::cli::run(std::env::args_os()));
}
