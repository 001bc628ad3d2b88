use clap::Parser;
use prime_subcomplex::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
