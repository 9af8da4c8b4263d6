// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weylsim::io::{Command, Format, InitialState, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "weylsim", version, about = "Dissipative Weyl-semimetal qubit: figure data as tables")]
pub struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Upper and lower bands E± over the (k_x, k_y) zone at fixed k_z.
    Bands(Flags),
    /// Steady-state purity over the (k_x, k_y) zone at fixed k_z.
    PuritySurface(Flags),
    /// Steady-state purity and Bloch vector along a sweep of m = λ + cos k_z.
    Sweep(Flags),
    /// Time evolution of the density matrix from (|e⟩+|g⟩)/√2.
    Evolve(Flags),
    /// Band touchings (Weyl points) in the (k_x, k_y) plane.
    WeylFind(Flags),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InitialArg {
    Plus,
    Excited,
    Ground,
    Mixed,
}

/// Every flag is optional; omitted ones take the figure defaults.
#[derive(Debug, Args)]
struct Flags {
    /// Control parameter λ.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Decay rate γ.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// k_x in radians; accepts pi, pi/2, -pi/4, 3pi/4, ...
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    kx: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    ky: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle)]
    kz: Option<f64>,
    /// Mass m = λ + cos k_z; overrides --lambda/--kz.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    /// Grid points per zone axis.
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
    /// Integration horizon; defaults to 50/γ.
    #[arg(long)]
    t_end: Option<f64>,
    /// Record every N-th integration step.
    #[arg(long)]
    sample_every: Option<usize>,
    /// Number of sweep points.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    m_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    m_max: Option<f64>,
    /// Band-touching threshold on E_+.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    initial: Option<InitialArg>,
    /// Output path; defaults to <subcommand>.<format>.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the resolved configuration next to the output (default).
    #[arg(long, overrides_with = "no_sidecar")]
    sidecar: bool,
    #[arg(long)]
    no_sidecar: bool,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, f) = match self.command {
            Sub::Bands(f) => (Command::Bands, f),
            Sub::PuritySurface(f) => (Command::PuritySurface, f),
            Sub::Sweep(f) => (Command::Sweep, f),
            Sub::Evolve(f) => (Command::Evolve, f),
            Sub::WeylFind(f) => (Command::WeylFind, f),
        };
        let mut c = RunConfig::defaults_for(command);
        macro_rules! set {
            ($($field:ident <- $flag:ident),* $(,)?) => {
                $(if let Some(v) = f.$flag { c.$field = v; })*
            };
        }
        set!(lambda <- lambda, gamma <- gamma, kx <- kx, ky <- ky, kz <- kz, grid_n <- grid_n,
             dt <- dt, sample_every <- sample_every, steps <- steps, m_min <- m_min,
             m_max <- m_max, tol <- tol);
        c.m = f.m;
        c.t_end = f.t_end.unwrap_or(50.0 / c.gamma);
        if let Some(i) = f.initial {
            c.initial_state = match i {
                InitialArg::Plus => InitialState::Plus,
                InitialArg::Excited => InitialState::Excited,
                InitialArg::Ground => InitialState::Ground,
                InitialArg::Mixed => InitialState::Mixed,
            };
        }
        if let Some(fmt) = f.format {
            c.format = match fmt {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
        }
        c.out = f.out.unwrap_or_else(|| PathBuf::from(format!("{}.{}", command.name(), c.format.extension())));
        c.sidecar = !f.no_sidecar;
        c
    }
}

/// Radians, either as a plain number or as `[-][coef]pi[/den]`.
fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    let bad = || format!("cannot parse angle {s:?}; use radians or forms like pi, -pi/2, 3pi/4");
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let coef = match num.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*') {
        "" => 1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(sign * coef * PI / den)
}
