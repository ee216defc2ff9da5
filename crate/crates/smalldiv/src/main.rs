fn main() {
    std::process::exit(smalldiv::run(std::env::args_os()));
}
