fn main() {
    std::process::exit(meanosc::cli::dispatch(std::env::args_os().skip(1)));
}
