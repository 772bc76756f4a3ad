use clap::Parser;

fn main() {
    let cli = plectic_core::cli::Cli::parse();
    std::process::exit(plectic_core::cli::main_with(cli));
}
