fn main() {
    std::process::exit(macdonald_hecke::cli::run());
}
