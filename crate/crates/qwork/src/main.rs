fn main() {
    std::process::exit(qwork::run(std::env::args_os()));
}
