use clap::Parser;

fn main() {
    let cli = lingam::cli::Cli::parse();
    if let Err(e) = lingam::cli::run(cli) {
        eprintln!("error[{}]: {}", e.code(), e);
        std::process::exit(1);
    }
}
