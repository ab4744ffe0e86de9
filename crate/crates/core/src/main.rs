fn main() {
    std::process::exit(fr_bvd::harness::main_with_args(std::env::args_os()));
}
