fn main() {
    std::process::exit(psifix::cli::run());
}
