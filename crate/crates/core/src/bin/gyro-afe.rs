fn main() {
    std::process::exit(gyro_afe::cli::run(std::env::args_os()));
}
