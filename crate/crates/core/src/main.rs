fn main() {
    std::process::exit(hcbridge::cli_harness::commands::main_with(std::env::args_os()));
}
