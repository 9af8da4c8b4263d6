// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! wasm-bindgen surface for the static page in `www/`.
//!
//! Results cross the boundary as flat `Float64Array`s; the record layout of
//! each export is given on the function.

use wasm_bindgen::prelude::*;
use weylsim::io::{Command, RunConfig};
use weylsim::{DensityMatrix, DissipativeQubit, IntegrateOptions};

/// Which zone surface to draw.
#[wasm_bindgen]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    UpperBand = 0,
    Purity = 1,
}

/// Row-major `n × n` grid of `E_+` or steady-state purity over the zone,
/// `k_x` as the slow index, axis `k_i = −π + 2πi/n`.
#[wasm_bindgen]
pub fn zone_surface(surface: Surface, n: usize, lambda: f64, kz: f64, gamma: f64) -> Result<Vec<f64>, JsError> {
    compute_surface(surface, n, lambda, kz, gamma).map_err(js_error)
}

/// Records `[m, purity, R_x, R_y, R_z]` for `steps` masses in `[−2, 2]`.
#[wasm_bindgen]
pub fn mass_sweep(kx: f64, ky: f64, gamma: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    compute_sweep(kx, ky, gamma, steps).map_err(js_error)
}

/// Records `[t, |ρ_eg|, R_x, R_y, R_z]` from `(|e⟩+|g⟩)/√2`, sampled every
/// 0.05 time units with `dt = 1e−3`.
#[wasm_bindgen]
pub fn evolve(kx: f64, ky: f64, m: f64, gamma: f64, t_end: f64) -> Result<Vec<f64>, JsError> {
    compute_evolution(kx, ky, m, gamma, t_end).map_err(js_error)
}

fn js_error(e: weylsim::Error) -> JsError {
    JsError::new(&e.to_string())
}

pub fn compute_surface(surface: Surface, n: usize, lambda: f64, kz: f64, gamma: f64) -> weylsim::Result<Vec<f64>> {
    let mut config = RunConfig::defaults_for(match surface {
        Surface::UpperBand => Command::Bands,
        Surface::Purity => Command::PuritySurface,
    });
    config.grid_n = n;
    config.lambda = lambda;
    config.kz = kz;
    config.gamma = gamma;
    let p = config.resolve()?.params()?;
    let grid = match surface {
        Surface::UpperBand => weylsim::band_surface(n, &p, kz)?,
        Surface::Purity => weylsim::purity_surface(n, &p, kz)?,
    };
    Ok(grid.values)
}

pub fn compute_sweep(kx: f64, ky: f64, gamma: f64, steps: usize) -> weylsim::Result<Vec<f64>> {
    let s = weylsim::transition_sweep(kx, ky, gamma, -2.0, 2.0, steps)?;
    Ok(s.m.iter().zip(&s.purity).zip(&s.bloch).flat_map(|((&m, &p), b)| [m, p, b.rx, b.ry, b.rz]).collect())
}

pub fn compute_evolution(kx: f64, ky: f64, m: f64, gamma: f64, t_end: f64) -> weylsim::Result<Vec<f64>> {
    let q = DissipativeQubit::from_mass(kx, ky, m, gamma)?;
    let traj = q.integrate(&DensityMatrix::plus(), &IntegrateOptions::new(t_end, 1e-3, 50))?;
    Ok(traj
        .times
        .iter()
        .zip(&traj.states)
        .flat_map(|(&t, rho)| {
            let b = weylsim::bloch_vector(rho);
            [t, rho.coherence(), b.rx, b.ry, b.rz]
        })
        .collect())
}
