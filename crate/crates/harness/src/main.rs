use clap::Parser;

fn main() {
    let cli = boundcs_harness::cli::Cli::parse();
    if let Err(e) = boundcs_harness::cli::run(cli) {
        eprintln!("boundcs: {e}");
        std::process::exit(e.exit_code());
    }
}
