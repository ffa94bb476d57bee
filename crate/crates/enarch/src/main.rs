fn main() -> std::process::ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ENARCH_LOG")).init();
    enarch::cli::main()
}
