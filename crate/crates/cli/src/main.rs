fn main() {
    std::process::exit(ncalc::run(std::env::args_os()));
}
