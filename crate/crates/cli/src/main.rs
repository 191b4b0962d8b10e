use clap::Parser;
use dualwave_cli::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dualwave_cli::run(cli) {
        eprintln!("dualwave: {e}");
        std::process::exit(e.exit_code());
    }
}
