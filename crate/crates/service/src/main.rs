use clap::Parser;

fn main() {
    let cli = pcmbench::cli::Cli::parse();
    if let Err(e) = pcmbench::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
