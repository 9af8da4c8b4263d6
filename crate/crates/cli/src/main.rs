// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! `weylsim`: regenerate band, purity, sweep and decoherence data as tables.
//!
//! Exit status: 0 success, 2 invalid parameters, 3 numerical failure, 4 I/O.

mod args;

use std::fs::File;
use std::io::BufWriter;
use std::process::ExitCode;

use clap::Parser;
use weylsim::io::{self, RunConfig};
use weylsim::Error;

use crate::args::Cli;

fn execute(config: RunConfig) -> Result<(), Error> {
    let config = config.resolve()?;
    if !config.params()?.lambda_in_experimental_range() {
        eprintln!("warning: |lambda| = {} exceeds 1", config.lambda.abs());
    }
    let table = io::run(&config)?;
    let file = File::create(&config.out)?;
    table.write(config.format, BufWriter::new(file))?;
    if config.sidecar {
        io::write_sidecar(&config, &config.sidecar_path())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.into_config()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
