//! `qexp`: command line access to divergences, information measures,
//! capacities, auxiliary functions, exponents and the property suites.
//!
//! Exit status: 0 on success, 1 when a suite fails, 2 on malformed input and
//! 3 on numerical failure.

mod args;
mod commands;
mod output;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Divergence(a) => commands::divergence(a, cli.units),
        Command::Info(a) => commands::info(a, cli.units, "info"),
        Command::Mean(a) => commands::info(a, cli.units, "mean"),
        Command::Capacity(a) => commands::capacity_cmd(a, cli.units),
        Command::E0Curve(a) => commands::e0_curve(a, cli.units),
        Command::Exponent(a) => commands::exponent(a, cli.units),
        Command::Check(a) => commands::check(a),
    };
    if let Err(e) = result {
        eprintln!("qexp: {e}");
        std::process::exit(e.exit_code());
    }
}
