// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration, numeric tables and their CSV/JSON encodings.
//!
//! Each CLI subcommand is a pure function `RunConfig -> Table` defined here;
//! the binary only parses flags and writes files. CSV reals carry 17
//! significant digits so that every table reads back bit-identically.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::dynamics::IntegrateOptions;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::model::{realize_mass, DissipativeQubit, ModelParams, MomentumPoint};
use crate::scan::{find_band_touchings, map_grid, transition_sweep};
use crate::steady::{bloch_vector, DensityMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Bands,
    PuritySurface,
    Sweep,
    Evolve,
    WeylFind,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bands => "bands",
            Command::PuritySurface => "purity-surface",
            Command::Sweep => "sweep",
            Command::Evolve => "evolve",
            Command::WeylFind => "weyl-find",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Initial state for `evolve`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialState {
    /// `(|e⟩ + |g⟩)/√2`
    #[default]
    Plus,
    Excited,
    Ground,
    Mixed,
}

impl InitialState {
    pub fn density_matrix(self) -> DensityMatrix {
        match self {
            InitialState::Plus => DensityMatrix::plus(),
            InitialState::Excited => DensityMatrix::excited(),
            InitialState::Ground => DensityMatrix::ground(),
            InitialState::Mixed => DensityMatrix::maximally_mixed(),
        }
    }
}

/// Fully resolved parameters of one run. Serialized next to every output
/// table so the table can be regenerated from the sidecar alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub lambda: f64,
    pub gamma: f64,
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
    /// Mass `λ + cos k_z`. When set it replaces `λ + cos k_z` directly and
    /// `lambda`/`kz` record one realization of it.
    pub m: Option<f64>,
    pub grid_n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub sample_every: usize,
    pub steps: usize,
    pub m_min: f64,
    pub m_max: f64,
    pub tol: f64,
    pub initial_state: InitialState,
    pub out: PathBuf,
    pub format: Format,
    pub sidecar: bool,
}

impl RunConfig {
    /// Defaults that regenerate the corresponding figure data: `γ = 1`,
    /// `λ = 0`, `k_z = π/2`, anti-Weyl `(π/2, π/2)` for sweeps and the Weyl
    /// point `(0, 0)` for time evolution.
    pub fn defaults_for(command: Command) -> Self {
        let (kx, ky) = match command {
            Command::Sweep => (FRAC_PI_2, FRAC_PI_2),
            _ => (0.0, 0.0),
        };
        RunConfig {
            command,
            lambda: 0.0,
            gamma: 1.0,
            kx,
            ky,
            kz: FRAC_PI_2,
            m: None,
            grid_n: 100,
            dt: 1e-3,
            t_end: 50.0,
            sample_every: 100,
            steps: 401,
            m_min: -2.0,
            m_max: 2.0,
            tol: 1e-9,
            initial_state: InitialState::Plus,
            out: PathBuf::from(format!("{}.csv", command.name())),
            format: Format::Csv,
            sidecar: true,
        }
    }

    /// Applies `m` (if any) to `lambda`/`kz` and validates the physics.
    pub fn resolve(mut self) -> Result<Self> {
        if let Some(m) = self.m {
            let (lambda, kz) = realize_mass(m)?;
            self.lambda = lambda;
            self.kz = kz;
        }
        ModelParams::new(self.lambda, self.gamma)?;
        for (name, v) in [("kx", self.kx), ("ky", self.ky), ("kz", self.kz)] {
            if !v.is_finite() {
                return Err(Error::param(format!("{name} must be finite")));
            }
        }
        Ok(self)
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.lambda, self.gamma)
    }

    /// Qubit at in-plane momentum `(kx, ky)` under this configuration.
    pub fn qubit_at(&self, kx: f64, ky: f64) -> Result<DissipativeQubit> {
        match self.m {
            Some(m) => DissipativeQubit::from_mass(kx, ky, m, self.gamma),
            None => Ok(DissipativeQubit::new(&MomentumPoint::new(kx, ky, self.kz), &self.params()?)),
        }
    }

    /// `<out stem>.run.json`.
    pub fn sidecar_path(&self) -> PathBuf {
        self.out.with_extension("run.json")
    }
}

/// Named columns of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write(&self, format: Format, w: impl Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(&self.columns)?;
        for row in &self.rows {
            wtr.write_record(row.iter().map(|&x| format_real(x)))?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn read_csv(r: impl Read) -> Result<Table> {
        let mut rdr = csv::Reader::from_reader(r);
        let columns: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Table(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != columns.len() {
                return Err(Error::Table(format!("row has {} fields, header has {}", row.len(), columns.len())));
            }
            rows.push(row);
        }
        Ok(Table { columns, rows })
    }

    /// JSON array of row objects with keys in column order.
    pub fn write_json(&self, mut w: impl Write) -> Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, &x)| (c.clone(), serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut w, &rows)?;
        w.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json(r: impl Read) -> Result<Table> {
        let rows: Vec<Map<String, Value>> = serde_json::from_reader(r)?;
        let columns: Vec<String> = rows.first().map(|r| r.keys().cloned().collect()).unwrap_or_default();
        let mut table = Table { columns, rows: Vec::with_capacity(rows.len()) };
        for obj in &rows {
            let row = table
                .columns
                .iter()
                .map(|c| match obj.get(c) {
                    Some(Value::Number(n)) => n.as_f64().ok_or_else(|| Error::Table(format!("{c}: not a float"))),
                    Some(Value::Null) => Ok(f64::NAN),
                    _ => Err(Error::Table(format!("missing or non-numeric field {c}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// Scientific notation with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_sidecar(config: &RunConfig, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, config)?;
    f.write_all(b"\n")?;
    Ok(())
}

pub fn read_sidecar(path: &Path) -> Result<RunConfig> {
    Ok(serde_json::from_reader(std::fs::File::open(path)?)?)
}

/// Computes the output table of a resolved configuration.
pub fn run(config: &RunConfig) -> Result<Table> {
    match config.command {
        Command::Bands => bands_table(config),
        Command::PuritySurface => purity_surface_table(config),
        Command::Sweep => sweep_table(config),
        Command::Evolve => evolve_table(config),
        Command::WeylFind => weyl_find_table(config),
    }
}

fn grid_table<F>(config: &RunConfig, columns: &[&str], cell: F) -> Result<Table>
where
    F: Fn(&DissipativeQubit) -> Vec<f64> + Sync,
{
    // Validate once up front so the per-cell closure cannot fail.
    config.qubit_at(0.0, 0.0)?;
    let (axis, cells) = map_grid(config.grid_n, |kx, ky| {
        let mut row = vec![kx, ky];
        row.extend(cell(&config.qubit_at(kx, ky).expect("validated above")));
        row
    })?;
    debug_assert_eq!(cells.len(), axis.len() * axis.len());
    let mut table = Table::new(columns);
    cells.into_iter().for_each(|row| table.push(row));
    Ok(table)
}

/// `k_x,k_y,E_plus,E_minus` over the zone grid.
pub fn bands_table(config: &RunConfig) -> Result<Table> {
    grid_table(config, &["k_x", "k_y", "E_plus", "E_minus"], |q| {
        let r = q.field.norm();
        vec![q.u0 + r, q.u0 - r]
    })
}

/// `k_x,k_y,purity` over the zone grid.
pub fn purity_surface_table(config: &RunConfig) -> Result<Table> {
    if !(config.gamma > 0.0) {
        return Err(Error::param(format!("purity surface requires gamma > 0, got {}", config.gamma)));
    }
    grid_table(config, &["k_x", "k_y", "purity"], |q| {
        vec![q.purity_closed_form().expect("positive denominator for gamma > 0")]
    })
}

/// `m,purity,R_x,R_y,R_z,R` along a mass sweep at `(kx, ky)`.
pub fn sweep_table(config: &RunConfig) -> Result<Table> {
    let s = transition_sweep(config.kx, config.ky, config.gamma, config.m_min, config.m_max, config.steps)?;
    let mut table = Table::new(&["m", "purity", "R_x", "R_y", "R_z", "R"]);
    for ((&m, &p), b) in s.m.iter().zip(&s.purity).zip(&s.bloch) {
        table.push(vec![m, p, b.rx, b.ry, b.rz, b.norm()]);
    }
    Ok(table)
}

/// `t,rho_ee,re_rho_eg,im_rho_eg,abs_rho_eg,R_x,R_y,R_z` along a trajectory.
pub fn evolve_table(config: &RunConfig) -> Result<Table> {
    let q = config.qubit_at(config.kx, config.ky)?;
    let opts = IntegrateOptions::new(config.t_end, config.dt, config.sample_every);
    let traj = q.integrate(&config.initial_state.density_matrix(), &opts)?;
    let mut table = Table::new(&["t", "rho_ee", "re_rho_eg", "im_rho_eg", "abs_rho_eg", "R_x", "R_y", "R_z"]);
    for (&t, rho) in traj.times.iter().zip(&traj.states) {
        let eg: C64 = rho.rho_eg();
        let b = bloch_vector(rho);
        table.push(vec![t, rho.rho_ee(), eg.re, eg.im, eg.norm(), b.rx, b.ry, b.rz]);
    }
    Ok(table)
}

/// `k_x,k_y,gap` for every detected band touching.
pub fn weyl_find_table(config: &RunConfig) -> Result<Table> {
    let p = config.params()?;
    let points = find_band_touchings(config.grid_n, &p, config.kz, config.tol)?;
    let mut table = Table::new(&["k_x", "k_y", "gap"]);
    for k in points {
        table.push(vec![k.kx, k.ky, crate::model::band_gap(&k, &p)]);
    }
    Ok(table)
}
