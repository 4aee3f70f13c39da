use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Transmit(a) => commands::transmit(a),
        Command::Calibrate(run) => commands::calibrate(run),
        Command::Sweep(a) => commands::sweep(a),
        Command::Eavesdrop(a) => commands::eavesdrop(a),
    };
    match result {
        Ok(()) => ExitCode::from(commands::EXIT_OK),
        Err(code) => ExitCode::from(code),
    }
}
