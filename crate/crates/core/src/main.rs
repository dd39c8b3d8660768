fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = mmw_uav::cli::run(std::env::args_os()) {
        eprintln!("mmw-uav: {e}");
        std::process::exit(e.exit_code());
    }
}
