fn main() {
    std::process::exit(cable_order::cli::run(std::env::args_os()));
}
