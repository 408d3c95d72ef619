fn main() {
    std::process::exit(polyauto::cli::cli_main(std::env::args_os()));
}
