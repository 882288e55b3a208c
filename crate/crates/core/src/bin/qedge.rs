fn main() {
    std::process::exit(qedge::cli::run(std::env::args_os()));
}
