use clap::Parser;

fn main() {
    let cli = nsm_lab::cli::Cli::parse();
    std::process::exit(nsm_lab::cli::run(cli));
}
