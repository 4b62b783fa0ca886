fn main() {
    std::process::exit(ipd::io::run(std::env::args_os()));
}
