fn main() {
    std::process::exit(dwcalc::cli::main_with_args(std::env::args_os()));
}
