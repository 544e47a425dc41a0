fn main() {
    std::process::exit(mtprof::cli::main());
}
