use clap::Parser;
use jacobi::cli::{execute, RunConfig};

fn main() {
    let config = RunConfig::parse();
    std::process::exit(execute(&config));
}
