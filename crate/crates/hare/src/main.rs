use env_logger::Env;

fn main() {
    env_logger::Builder::from_env(Env::new().filter_or("HARE_LOG", "warn")).init();
    let status = hare::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(status);
}
