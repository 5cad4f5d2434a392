fn main() -> std::process::ExitCode {
    catphase::cli::run(std::env::args_os())
}
