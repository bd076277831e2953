fn main() {
    std::process::exit(kinkres::cli::main_impl(std::env::args_os()));
}
