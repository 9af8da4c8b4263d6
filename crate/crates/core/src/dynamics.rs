// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad dynamics with a single amplitude-damping channel,
//!
//! ```text
//! dρ/dt = −i[H, ρ] + (γ/2)(2σ₋ρσ₊ − σ₊σ₋ρ − ρσ₊σ₋),
//! ```
//!
//! integrated with fixed-step RK4 on the full 2×2 matrix, plus a
//! superoperator route to the steady state through the Liouvillian null space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{svd4, Mat2, Mat4, C64, IDENTITY, SIGMA_MINUS, SIGMA_PLUS};
use crate::model::{DissipativeQubit, ModelParams, MomentumPoint};
use crate::steady::DensityMatrix;

const I: C64 = C64::new(0.0, 1.0);

/// Trace drift that aborts an integration.
pub const MAX_TRACE_DRIFT: f64 = 1e-6;

/// Second-smallest Liouvillian singular value below which the steady state is
/// reported as non-unique.
pub const NULL_SPACE_GAP: f64 = 1e-9;

impl DissipativeQubit {
    /// Right-hand side of the master equation in matrix form.
    pub fn lindblad_rhs(&self, rho: &Mat2) -> Mat2 {
        let h = self.hamiltonian();
        let coherent = h.commutator(rho).scale(-I);
        if self.gamma == 0.0 {
            return coherent;
        }
        let n = SIGMA_PLUS * SIGMA_MINUS;
        let jump = (SIGMA_MINUS * *rho * SIGMA_PLUS).scale_re(2.0);
        let dissipator = (jump - n * *rho - *rho * n).scale_re(0.5 * self.gamma);
        coherent + dissipator
    }

    /// The same right-hand side written out for the independent components
    /// `(ρ_ee, ρ_eg)`:
    ///
    /// ```text
    /// dρ_ee/dt = i(sin k_x + i sin k_y)ρ_eg − i(sin k_x − i sin k_y)ρ_eg* − γρ_ee
    /// dρ_eg/dt = (i sin k_x + sin k_y)(2ρ_ee − 1) − [2i(λ + cos k_z) + γ/2]ρ_eg
    /// ```
    pub fn component_rhs(&self, rho_ee: f64, rho_eg: C64) -> (f64, C64) {
        let (sx, sy, m) = (self.field.bx, self.field.by, self.field.bz);
        let d_ee = I * C64::new(sx, sy) * rho_eg - I * C64::new(sx, -sy) * rho_eg.conj() - self.gamma * rho_ee;
        let d_eg = C64::new(sy, sx) * (2.0 * rho_ee - 1.0) - C64::new(0.5 * self.gamma, 2.0 * m) * rho_eg;
        (d_ee.re, d_eg)
    }

    /// Superoperator acting on row-major `vec(ρ) = (ρ_ee, ρ_eg, ρ_ge, ρ_gg)`,
    /// assembled from `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)`.
    pub fn liouvillian(&self) -> Liouvillian {
        let h = self.hamiltonian();
        let ht = transpose(&h);
        let coherent = (Mat4::kron(&h, &IDENTITY) - Mat4::kron(&IDENTITY, &ht)).scale(-I);
        let n = SIGMA_PLUS * SIGMA_MINUS;
        let dissipator = (Mat4::kron(&SIGMA_MINUS, &transpose(&SIGMA_PLUS)).scale(C64::new(2.0, 0.0))
            - Mat4::kron(&n, &IDENTITY)
            - Mat4::kron(&IDENTITY, &transpose(&n)))
        .scale(C64::new(0.5 * self.gamma, 0.0));
        Liouvillian(coherent + dissipator)
    }

    /// Steady state as the null vector of the Liouvillian.
    pub fn steady_state_numeric(&self) -> Result<DensityMatrix> {
        if !(self.gamma > 0.0) {
            return Err(Error::param("numeric steady state requires gamma > 0"));
        }
        let svd = svd4(&self.liouvillian().0);
        let second = svd.singular_values[2];
        if second < NULL_SPACE_GAP {
            return Err(Error::NonUniqueSteadyState { second, threshold: NULL_SPACE_GAP });
        }
        let raw = Mat2::from_vec(&svd.right_vectors[3]);
        // The null vector carries an arbitrary phase; dividing by the trace
        // removes it before Hermitizing.
        let unit = raw.scale(raw.trace().inv());
        let herm = (unit + unit.dagger()).scale_re(0.5);
        let rho_ee = herm.get(0, 0).re / herm.trace().re;
        let rho_eg = herm.get(0, 1) / herm.trace().re;
        Ok(DensityMatrix::from_populations(rho_ee, rho_eg))
    }

    pub fn integrate(&self, rho0: &DensityMatrix, opts: &IntegrateOptions) -> Result<Trajectory> {
        opts.validate()?;
        let steps = opts.step_count();
        let initial_trace = rho0.matrix().trace();
        let mut rho = *rho0.matrix();
        let mut times = vec![0.0];
        let mut states = vec![*rho0];
        let mut t = 0.0;
        for step in 1..=steps {
            let t_next = if step == steps { opts.t_end } else { step as f64 * opts.dt };
            rho = rk4_step(|r| self.lindblad_rhs(r), &rho, t_next - t);
            t = t_next;
            let drift = (rho.trace() - initial_trace).norm();
            if !(drift <= MAX_TRACE_DRIFT) {
                return Err(Error::TraceDrift { time: t, drift });
            }
            if step % opts.sample_every == 0 || step == steps {
                times.push(t);
                states.push(DensityMatrix::from_matrix(rho));
            }
        }
        Ok(Trajectory { times, states, qubit: *self })
    }
}

fn transpose(m: &Mat2) -> Mat2 {
    Mat2([[m.0[0][0], m.0[1][0]], [m.0[0][1], m.0[1][1]]])
}

/// One classical fourth-order Runge–Kutta step of `dy/dt = f(y)`.
pub fn rk4_step(f: impl Fn(&Mat2) -> Mat2, y: &Mat2, h: f64) -> Mat2 {
    let k1 = f(y);
    let k2 = f(&(*y + k1.scale_re(0.5 * h)));
    let k3 = f(&(*y + k2.scale_re(0.5 * h)));
    let k4 = f(&(*y + k3.scale_re(h)));
    *y + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(h / 6.0)
}

/// Master-equation right-hand side at momentum `k`.
pub fn lindblad_rhs(rho: &DensityMatrix, k: &MomentumPoint, p: &ModelParams) -> Mat2 {
    DissipativeQubit::new(k, p).lindblad_rhs(rho.matrix())
}

pub fn component_rhs(rho_ee: f64, rho_eg: C64, k: &MomentumPoint, p: &ModelParams) -> (f64, C64) {
    DissipativeQubit::new(k, p).component_rhs(rho_ee, rho_eg)
}

pub fn build_liouvillian(k: &MomentumPoint, p: &ModelParams) -> Liouvillian {
    DissipativeQubit::new(k, p).liouvillian()
}

pub fn steady_state_numeric(k: &MomentumPoint, p: &ModelParams) -> Result<DensityMatrix> {
    DissipativeQubit::new(k, p).steady_state_numeric()
}

pub fn integrate(
    rho0: &DensityMatrix,
    k: &MomentumPoint,
    p: &ModelParams,
    opts: &IntegrateOptions,
) -> Result<Trajectory> {
    DissipativeQubit::new(k, p).integrate(rho0, opts)
}

/// 4×4 generator of the master equation on vectorized density matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Liouvillian(pub Mat4);

impl Liouvillian {
    pub fn apply(&self, rho: &Mat2) -> Mat2 {
        Mat2::from_vec(&self.0.apply(&rho.to_vec()))
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> [f64; 4] {
        svd4(&self.0).singular_values
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegrateOptions {
    pub t_end: f64,
    pub dt: f64,
    /// Record every `sample_every`-th step (the final step is always kept).
    pub sample_every: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions { t_end: 50.0, dt: 1e-3, sample_every: 100 }
    }
}

impl IntegrateOptions {
    pub fn new(t_end: f64, dt: f64, sample_every: usize) -> Self {
        IntegrateOptions { t_end, dt, sample_every }
    }

    /// Defaults with `t_end = 50/γ`, long enough to relax to the steady state.
    pub fn for_gamma(gamma: f64) -> Self {
        IntegrateOptions { t_end: 50.0 / gamma, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::param(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::param(format!("t_end must be positive, got {}", self.t_end)));
        }
        if self.dt > self.t_end {
            return Err(Error::param(format!("dt {} exceeds t_end {}", self.dt, self.t_end)));
        }
        if self.sample_every == 0 {
            return Err(Error::param("sample_every must be at least 1"));
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land on `t_end`.
    fn step_count(&self) -> usize {
        let n = self.t_end / self.dt;
        let rounded = n.round();
        if (n - rounded).abs() <= 1e-9 * n.max(1.0) {
            rounded as usize
        } else {
            n.ceil() as usize
        }
    }
}

/// Time-ordered samples of one integration run.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub qubit: DissipativeQubit,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory always holds the initial state")
    }
}

/// `(t, |ρ_eg(t)|)` for every sample.
pub fn coherence_series(traj: &Trajectory) -> Vec<(f64, f64)> {
    traj.times.iter().zip(&traj.states).map(|(&t, s)| (t, s.coherence())).collect()
}

/// Least-squares fit of `ln y = intercept − rate·t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub rate: f64,
    pub intercept: f64,
    /// Mean squared residual of `ln y`.
    pub residual_variance: f64,
}

pub fn fit_decay_rate(series: &[(f64, f64)]) -> Result<DecayFit> {
    if series.len() < 10 {
        return Err(Error::param(format!("decay fit needs at least 10 points, got {}", series.len())));
    }
    if let Some(&(t, y)) = series.iter().find(|(_, y)| !(*y > 0.0)) {
        return Err(Error::param(format!("decay fit needs positive values, got {y} at t = {t}")));
    }
    let n = series.len() as f64;
    let mean_t = series.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_l = series.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(t, y) in series {
        sxx += (t - mean_t) * (t - mean_t);
        sxy += (t - mean_t) * (y.ln() - mean_l);
    }
    if sxx == 0.0 {
        return Err(Error::param("decay fit needs distinct times"));
    }
    let slope = sxy / sxx;
    let intercept = mean_l - slope * mean_t;
    let residual_variance = series.iter().map(|&(t, y)| (y.ln() - intercept - slope * t).powi(2)).sum::<f64>() / n;
    Ok(DecayFit { rate: -slope, intercept, residual_variance })
}
