fn main() -> std::process::ExitCode {
    oml::cli::main()
}
