//! `greencm`: command-line front end.  Results are JSON on stdout, logs go to stderr.
//!
//! Exit status: 0 when every certification passed, 1 for a failed computation or
//! certification (with a structured error on stdout), 2 for usage errors.

mod cache;
mod commands;
mod config;
mod envelope;
mod point;

use std::io::Write;

use clap::Parser;

use config::Cli;

fn main() {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if cli.verbose { "info" } else { "warn" }))
        .target(env_logger::Target::Stderr)
        .init();
    let envelope = commands::run(&cli);
    let text = serde_json::to_string_pretty(&envelope).expect("envelopes serialize");
    // A closed pipe (e.g. `| head`) is not an error of the computation.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(if envelope.passed() { 0 } else { 1 });
}
