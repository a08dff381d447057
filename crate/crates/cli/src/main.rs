fn main() {
    std::process::exit(radial_rkhs_cli::run(std::env::args_os()));
}
