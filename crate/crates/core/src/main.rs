fn main() {
    std::process::exit(mzsim::cli::cli_main(std::env::args_os()));
}
