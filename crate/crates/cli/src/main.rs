use clap::Parser;
use crosspack_cli::{cli::Cli, run};

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run::dispatch(cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}
