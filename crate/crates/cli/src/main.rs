fn main() {
    std::process::exit(s0calc::run(std::env::args_os()));
}
