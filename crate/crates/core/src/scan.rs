// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! Brillouin-zone surfaces, mass sweeps and band-touching search.
//!
//! Grid axes use `k_i = −π + 2πi/n` for `i = 1..=n`, which covers `(−π, π]`
//! and hits `0`, `±π/2` and `π` exactly whenever `n` is divisible by 4.

use std::f64::consts::{FRAC_PI_2, PI};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{energy_bands, wrap_to_zone, DissipativeQubit, ModelParams, MomentumPoint};
use crate::steady::{bloch_vector, BlochVector};

/// Values on an `n_x × n_y` momentum grid, row-major with `k_x` as the slow index.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    pub kx: Vec<f64>,
    pub ky: Vec<f64>,
    pub values: Vec<f64>,
}

impl Grid2D {
    pub fn nx(&self) -> usize {
        self.kx.len()
    }

    pub fn ny(&self) -> usize {
        self.ky.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ny() + j]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `(k_x, k_y, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.kx
            .iter()
            .flat_map(move |&x| self.ky.iter().map(move |&y| (x, y)))
            .zip(&self.values)
            .map(|((x, y), &v)| (x, y, v))
    }

    /// Grid points whose value lies within `tol` of the minimum.
    pub fn argmin_set(&self, tol: f64) -> Vec<(f64, f64)> {
        let min = self.min();
        self.iter().filter(|p| p.2 <= min + tol).map(|p| (p.0, p.1)).collect()
    }

    /// Grid points whose value lies within `tol` of the maximum.
    pub fn argmax_set(&self, tol: f64) -> Vec<(f64, f64)> {
        let max = self.max();
        self.iter().filter(|p| p.2 >= max - tol).map(|p| (p.0, p.1)).collect()
    }
}

/// `n` uniformly spaced momenta covering `(−π, π]`.
pub fn zone_axis(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (1..=n).map(|i| PI * ((2 * i) as f64 - nf) / nf).collect()
}

/// Evaluates `f(k_x, k_y)` on an `n × n` zone grid. Rows are computed in
/// parallel when the `parallel` feature is on; output order is row-major
/// regardless of scheduling.
pub fn map_grid<T, F>(n: usize, f: F) -> Result<(Vec<f64>, Vec<T>)>
where
    T: Send,
    F: Fn(f64, f64) -> T + Sync,
{
    if n < 3 {
        return Err(Error::param(format!("grid size must be at least 3, got {n}")));
    }
    let axis = zone_axis(n);
    let row = |&kx: &f64| axis.iter().map(|&ky| f(kx, ky)).collect::<Vec<_>>();
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<T>> = axis.par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<T>> = axis.iter().map(row).collect();
    Ok((axis, rows.into_iter().flatten().collect()))
}

pub fn evaluate_grid<F>(n: usize, f: F) -> Result<Grid2D>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let (axis, values) = map_grid(n, f)?;
    Ok(Grid2D { kx: axis.clone(), ky: axis, values })
}

/// Upper band `E_+` over the `(k_x, k_y)` plane at fixed `k_z`.
pub fn band_surface(n: usize, p: &ModelParams, kz: f64) -> Result<Grid2D> {
    evaluate_grid(n, |kx, ky| energy_bands(&MomentumPoint { kx, ky, kz }, p).0)
}

/// Steady-state purity over the `(k_x, k_y)` plane at fixed `k_z`.
pub fn purity_surface(n: usize, p: &ModelParams, kz: f64) -> Result<Grid2D> {
    if !(p.gamma > 0.0) {
        return Err(Error::param(format!("purity surface requires gamma > 0, got {}", p.gamma)));
    }
    evaluate_grid(n, |kx, ky| {
        DissipativeQubit::new(&MomentumPoint { kx, ky, kz }, p)
            .purity_closed_form()
            .expect("denominator is positive for gamma > 0")
    })
}

/// Snaps each in-plane component to the nearest zero of `sin`, i.e. the
/// exact minimizer of `sin²k_x + sin²k_y` in the current basin.
pub fn refine_touching_analytic(kx: f64, ky: f64) -> (f64, f64) {
    let snap = |k: f64| if wrap_to_zone(k).abs() < FRAC_PI_2 { 0.0 } else { PI };
    (snap(kx), snap(ky))
}

/// Coordinate-wise Newton descent on `sin²k`: the gradient is `sin 2k` and
/// the curvature `2 cos 2k`. Generic counterpart of
/// [`refine_touching_analytic`], kept for cross-checking.
pub fn refine_touching_descent(kx: f64, ky: f64) -> (f64, f64) {
    let descend = |mut k: f64| {
        for _ in 0..64 {
            let curvature = 2.0 * (2.0 * k).cos();
            let step = if curvature > 0.5 {
                (2.0 * k).sin() / curvature
            } else {
                // Outside the convex basin fall back to a damped gradient step.
                0.25 * (2.0 * k).sin()
            };
            k -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
        wrap_to_zone(k)
    };
    (descend(kx), descend(ky))
}

/// Band touchings (Weyl points) in the plane at fixed `k_z`: local minima of
/// `E_+` on an `n × n` grid, refined analytically, kept when `E_+ < tol`.
/// Sorted by `(k_x, k_y)`; empty in the gapped phase.
pub fn find_band_touchings(n: usize, p: &ModelParams, kz: f64, tol: f64) -> Result<Vec<MomentumPoint>> {
    if !(tol > 0.0) {
        return Err(Error::param(format!("tolerance must be positive, got {tol}")));
    }
    let grid = band_surface(n, p, kz)?;
    let mut found: Vec<MomentumPoint> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = grid.get(i, j);
            let is_local_min = (-1isize..=1).all(|di| {
                (-1isize..=1).all(|dj| {
                    let ii = (i as isize + di).rem_euclid(n as isize) as usize;
                    let jj = (j as isize + dj).rem_euclid(n as isize) as usize;
                    grid.get(ii, jj) >= v
                })
            });
            if !is_local_min {
                continue;
            }
            let (kx, ky) = refine_touching_analytic(grid.kx[i], grid.ky[j]);
            let point = MomentumPoint::new(kx, ky, kz);
            if energy_bands(&point, p).0 >= tol {
                continue;
            }
            if !found.iter().any(|q| q.kx == point.kx && q.ky == point.ky) {
                found.push(point);
            }
        }
    }
    found.sort_by(|a, b| a.kx.total_cmp(&b.kx).then(a.ky.total_cmp(&b.ky)));
    Ok(found)
}

/// Steady-state purity and Bloch vector along a sweep of the mass
/// `m = λ + cos k_z` at fixed `(k_x, k_y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub m: Vec<f64>,
    pub purity: Vec<f64>,
    pub bloch: Vec<BlochVector>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// Index of the smallest purity (first one on ties).
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.purity.iter().enumerate() {
            if p < self.purity[best] {
                best = i;
            }
        }
        best
    }
}

/// Uniform samples of `[lo, hi]`, mirror-exact when `lo = −hi`.
pub fn uniform_samples(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let last = (steps - 1) as f64;
    (0..steps).map(|i| mid + half * ((2 * i) as f64 - last) / last).collect()
}

pub fn transition_sweep(kx: f64, ky: f64, gamma: f64, m_min: f64, m_max: f64, steps: usize) -> Result<SweepResult> {
    if steps < 3 {
        return Err(Error::param(format!("sweep needs at least 3 steps, got {steps}")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::param(format!("sweep requires gamma > 0, got {gamma}")));
    }
    if !(m_min < m_max) {
        return Err(Error::param(format!("empty mass range [{m_min}, {m_max}]")));
    }
    let m = uniform_samples(m_min, m_max, steps);
    let mut purity = Vec::with_capacity(steps);
    let mut bloch = Vec::with_capacity(steps);
    for &mi in &m {
        let q = DissipativeQubit::from_mass(kx, ky, mi, gamma)?;
        purity.push(q.purity_closed_form()?);
        bloch.push(bloch_vector(&q.steady_state()?.rho));
    }
    Ok(SweepResult { m, purity, bloch })
}

pub fn bloch_trajectory_of_steady_states(
    kx: f64,
    ky: f64,
    gamma: f64,
    m_min: f64,
    m_max: f64,
    steps: usize,
) -> Result<Vec<BlochVector>> {
    Ok(transition_sweep(kx, ky, gamma, m_min, m_max, steps)?.bloch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ANTI_WEYL_POINTS_XY, WEYL_POINTS_XY};
    use std::f64::consts::FRAC_PI_4;

    fn params(lambda: f64) -> ModelParams {
        ModelParams::new(lambda, 1.0).unwrap()
    }

    fn sorted(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
        v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        v
    }

    fn weyl_set() -> Vec<(f64, f64)> {
        sorted(WEYL_POINTS_XY.to_vec())
    }

    #[test]
    fn axis_hits_high_symmetry_points() {
        let axis = zone_axis(100);
        assert_eq!(axis.len(), 100);
        assert_eq!(axis[99], PI);
        for k in [0.0, FRAC_PI_2, -FRAC_PI_2] {
            assert!(axis.contains(&k), "{k}");
        }
        assert!(zone_axis(200).contains(&FRAC_PI_4));
        assert!(axis.windows(2).all(|w| w[1] > w[0]));
        assert!(axis[0] > -PI);
    }

    #[test]
    fn band_surface_touches_at_weyl_points() {
        let g = band_surface(100, &params(0.0), FRAC_PI_2).unwrap();
        assert_eq!(g.values.len(), 100 * 100);
        assert!(g.min() < 1e-12);
        assert_eq!(sorted(g.argmin_set(1e-12)), weyl_set());
        assert!((g.max() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(sorted(g.argmax_set(1e-12)), sorted(ANTI_WEYL_POINTS_XY.to_vec()));
    }

    #[test]
    fn band_surface_gapped() {
        let g = band_surface(100, &params(1.0), 0.0).unwrap();
        assert_eq!(g.min(), 2.0);
        assert!(band_surface(2, &params(1.0), 0.0).is_err());
    }

    #[test]
    fn purity_surface_structure() {
        let g = purity_surface(100, &params(0.0), FRAC_PI_2).unwrap();
        assert!((g.max() - 1.0).abs() < 1e-12);
        assert_eq!(sorted(g.argmax_set(1e-12)), weyl_set());
        assert!((g.min() - (1.0 - 128.0 / 289.0)).abs() < 1e-12);
        assert_eq!(sorted(g.argmin_set(1e-12)), sorted(ANTI_WEYL_POINTS_XY.to_vec()));

        let bands = band_surface(100, &params(0.0), FRAC_PI_2).unwrap();
        assert_eq!(sorted(g.argmin_set(1e-12)), sorted(bands.argmax_set(1e-12)));
        assert_eq!(sorted(g.argmax_set(1e-12)), sorted(bands.argmin_set(1e-12)));

        assert!(purity_surface(100, &ModelParams::new(0.0, 0.0).unwrap(), FRAC_PI_2).is_err());
    }

    #[test]
    fn touchings_at_critical_mass() {
        let expected: Vec<_> = weyl_set();
        for (lambda, kz) in [(0.0, FRAC_PI_2), (-1.0, 0.0)] {
            let pts = find_band_touchings(100, &params(lambda), kz, 1e-9).unwrap();
            let got: Vec<_> = pts.iter().map(|p| (p.kx, p.ky)).collect();
            assert_eq!(got, expected, "λ={lambda}");
        }
        assert!(find_band_touchings(100, &params(0.5), FRAC_PI_2, 1e-9).unwrap().is_empty());
        assert!(find_band_touchings(100, &params(0.0), FRAC_PI_2, 0.0).is_err());
    }

    #[test]
    fn touchings_stable_under_refinement() {
        let p = params(0.0);
        let coarse = find_band_touchings(101, &p, FRAC_PI_2, 1e-9).unwrap();
        let fine = find_band_touchings(201, &p, FRAC_PI_2, 1e-9).unwrap();
        assert_eq!(coarse.len(), 4);
        for (a, b) in coarse.iter().zip(&fine) {
            assert!((a.kx - b.kx).abs() < 1e-9 && (a.ky - b.ky).abs() < 1e-9);
        }
    }

    #[test]
    fn descent_agrees_with_analytic_refinement() {
        for &(kx, ky) in &[(0.05, -0.04), (3.1, 0.02), (-3.05, 3.0), (0.3, -0.6), (-1.2, 2.0)] {
            let (ax, ay) = refine_touching_analytic(kx, ky);
            let (dx, dy) = refine_touching_descent(kx, ky);
            let close = |a: f64, b: f64| (wrap_to_zone(a - b)).abs() < 1e-9;
            assert!(close(ax, dx) && close(ay, dy), "({kx}, {ky}) -> ({dx}, {dy}) vs ({ax}, {ay})");
        }
    }

    #[test]
    fn sweep_anti_weyl_minimum() {
        let s = transition_sweep(FRAC_PI_2, FRAC_PI_2, 1.0, -2.0, 2.0, 401).unwrap();
        assert_eq!(s.len(), 401);
        assert_eq!(s.m[200], 0.0);
        assert_eq!(s.argmin(), 200);
        assert!((s.purity[200] - 0.557093).abs() < 1e-6);
        let r = s.bloch[200].norm();
        assert!((r - 33f64.sqrt() / 17.0).abs() < 1e-12);
        let norms: Vec<f64> = s.bloch.iter().map(|b| b.norm()).collect();
        let max = norms.iter().copied().fold(0.0, f64::max);
        assert!(norms[0] == max || (norms[0] - max).abs() < 1e-15);
        assert!(norms[400] == max || (norms[400] - max).abs() < 1e-15);
        assert!(norms.iter().all(|&x| x >= r));
    }

    #[test]
    fn sweep_quarter_point_and_weyl_line() {
        let s = transition_sweep(FRAC_PI_4, FRAC_PI_4, 1.0, -2.0, 2.0, 401).unwrap();
        assert_eq!(s.argmin(), 200);
        assert!((s.purity[200] - (1.0 - 8.0 / 20.25)).abs() < 1e-12);

        let s = transition_sweep(0.0, 0.0, 1.0, -2.0, 2.0, 401).unwrap();
        assert!(s.purity.iter().all(|&p| p == 1.0));
        assert!(s.bloch.iter().all(|b| *b == BlochVector::new(0.0, 0.0, -1.0)));
    }

    #[test]
    fn sweep_is_even_and_monotone_in_mass() {
        for (kx, ky, g) in [(FRAC_PI_2, FRAC_PI_2, 1.0), (1.0, 0.3, 0.4), (-2.0, 0.7, 3.0)] {
            let s = transition_sweep(kx, ky, g, -2.0, 2.0, 401).unwrap();
            for i in 0..s.len() {
                assert_eq!(s.m[i], -s.m[s.len() - 1 - i]);
                assert!((s.purity[i] - s.purity[s.len() - 1 - i]).abs() <= 1e-14);
                assert!(s.purity[i] >= 0.5 && s.purity[i] <= 1.0 + 1e-12);
            }
            for i in 0..s.len() {
                for j in 0..s.len() {
                    if s.m[i].abs() < s.m[j].abs() {
                        assert!(s.purity[i] <= s.purity[j]);
                    }
                }
            }
            for (p, b) in s.purity.iter().zip(&s.bloch) {
                assert!((b.norm() - (2.0 * p - 1.0).sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sweep_validation() {
        assert!(transition_sweep(1.0, 1.0, 1.0, -2.0, 2.0, 2).is_err());
        assert!(transition_sweep(1.0, 1.0, 0.0, -2.0, 2.0, 11).is_err());
        assert!(transition_sweep(1.0, 1.0, 1.0, 2.0, -2.0, 11).is_err());
    }

    #[test]
    fn grid_output_is_deterministic() {
        let a = purity_surface(64, &params(0.2), 1.0).unwrap();
        let b = purity_surface(64, &params(0.2), 1.0).unwrap();
        assert_eq!(a, b);
        let serial: Vec<f64> = a
            .kx
            .iter()
            .flat_map(|&kx| a.ky.iter().map(move |&ky| (kx, ky)))
            .map(|(kx, ky)| {
                DissipativeQubit::new(&MomentumPoint { kx, ky, kz: 1.0 }, &params(0.2)).purity_closed_form().unwrap()
            })
            .collect();
        assert_eq!(a.values, serial);
    }
}
