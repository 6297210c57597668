use clap::Parser;

fn main() {
    let cli = qwalk_cli::Cli::parse();
    std::process::exit(qwalk_cli::run(cli));
}
