use clap::Parser;

fn main() {
    let cli = ebundle_cli::Cli::parse();
    std::process::exit(ebundle_cli::execute(&cli));
}
