use clap::Parser;

fn main() {
    let cli = cvc_cli::Cli::parse();
    std::process::exit(cvc_cli::main_with(&cli));
}
