// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-band Weyl-semimetal Hamiltonian
//! `H(k) = sin k_x σ_x + sin k_y σ_y + (λ + cos k_z) σ_z + u₀ σ₀`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, C64, IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z};

/// Band-touching momenta in the `(k_x, k_y)` plane: `sin k_x = sin k_y = 0`.
pub const WEYL_POINTS_XY: [(f64, f64); 4] = [(0.0, 0.0), (PI, 0.0), (0.0, PI), (PI, PI)];

/// Maximizers of `E_+` over `(k_x, k_y)`: `sin²k_x + sin²k_y = 2`.
pub const ANTI_WEYL_POINTS_XY: [(f64, f64); 4] =
    [(-FRAC_PI_2, -FRAC_PI_2), (-FRAC_PI_2, FRAC_PI_2), (FRAC_PI_2, -FRAC_PI_2), (FRAC_PI_2, FRAC_PI_2)];

/// Reduce an angle into the first Brillouin zone `(−π, π]`. Values already in
/// range are returned unchanged.
pub fn wrap_to_zone(k: f64) -> f64 {
    if k > -PI && k <= PI {
        return k;
    }
    let r = k.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Wave vector in the first Brillouin zone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumPoint {
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
}

impl MomentumPoint {
    /// Builds a point, folding each component into `(−π, π]`.
    pub fn new(kx: f64, ky: f64, kz: f64) -> Self {
        MomentumPoint { kx: wrap_to_zone(kx), ky: wrap_to_zone(ky), kz: wrap_to_zone(kz) }
    }
}

/// Physical configuration: control parameter `λ`, decay rate `γ` and the
/// uniform energy offset `u₀`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub gamma: f64,
    pub u0: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, gamma: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::param(format!("lambda must be finite, got {lambda}")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::param(format!("gamma must be finite and >= 0, got {gamma}")));
        }
        Ok(ModelParams { lambda, gamma, u0: 0.0 })
    }

    pub fn with_u0(mut self, u0: f64) -> Self {
        self.u0 = u0;
        self
    }

    /// Whether `|λ| ≤ 1`, the range reachable in the circuit realization.
    /// Everything is well defined outside it; callers may warn.
    pub fn lambda_in_experimental_range(&self) -> bool {
        self.lambda.abs() <= 1.0
    }
}

/// `B(k) = (sin k_x, sin k_y, λ + cos k_z)` so that `H = B·σ + u₀`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveField {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
}

impl EffectiveField {
    pub fn new(bx: f64, by: f64, bz: f64) -> Self {
        EffectiveField { bx, by, bz }
    }

    /// `sin²k_x + sin²k_y`.
    pub fn transverse_sq(&self) -> f64 {
        self.bx * self.bx + self.by * self.by
    }

    pub fn norm(&self) -> f64 {
        (self.transverse_sq() + self.bz * self.bz).sqrt()
    }

    /// Off-diagonal Hamiltonian entry `h_eg = B_x − i B_y`.
    pub fn h_eg(&self) -> C64 {
        C64::new(self.bx, -self.by)
    }
}

/// `m = λ + cos k_z`. The bands can only touch where `m = 0`.
pub fn mass_parameter(kz: f64, lambda: f64) -> f64 {
    lambda + kz.cos()
}

/// Realize a mass `m ∈ [−2, 2]` as concrete `(λ, k_z)`: `λ = clamp(m, −1, 1)`,
/// `k_z = arccos(m − λ)`. For `|m| ≤ 1` this keeps `k_z = π/2`.
pub fn realize_mass(m: f64) -> Result<(f64, f64)> {
    if !(-2.0..=2.0).contains(&m) {
        return Err(Error::param(format!("mass {m} is outside [-2, 2]")));
    }
    let lambda = m.clamp(-1.0, 1.0);
    let kz = (m - lambda).clamp(-1.0, 1.0).acos();
    Ok((lambda, kz))
}

pub fn effective_field(k: &MomentumPoint, p: &ModelParams) -> EffectiveField {
    EffectiveField { bx: k.kx.sin(), by: k.ky.sin(), bz: mass_parameter(k.kz, p.lambda) }
}

/// `H = B_x σ_x + B_y σ_y + B_z σ_z + u₀ σ₀`.
pub fn hamiltonian(k: &MomentumPoint, p: &ModelParams) -> Mat2 {
    field_hamiltonian(&effective_field(k, p), p.u0)
}

pub(crate) fn field_hamiltonian(b: &EffectiveField, u0: f64) -> Mat2 {
    SIGMA_X.scale_re(b.bx) + SIGMA_Y.scale_re(b.by) + SIGMA_Z.scale_re(b.bz) + IDENTITY.scale_re(u0)
}

/// `(E_+, E_−) = u₀ ± |B|`.
pub fn energy_bands(k: &MomentumPoint, p: &ModelParams) -> (f64, f64) {
    let r = effective_field(k, p).norm();
    (p.u0 + r, p.u0 - r)
}

/// `E_+ − E_− = 2|B|`.
pub fn band_gap(k: &MomentumPoint, p: &ModelParams) -> f64 {
    2.0 * effective_field(k, p).norm()
}

/// The driven, damped qubit seen at one momentum: effective field, energy
/// offset and decay rate. Everything downstream of the band structure
/// (steady states, dynamics) is a function of this triple only, which lets
/// mass sweeps substitute `m` directly for `λ + cos k_z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DissipativeQubit {
    pub field: EffectiveField,
    pub u0: f64,
    pub gamma: f64,
}

impl DissipativeQubit {
    pub fn new(k: &MomentumPoint, p: &ModelParams) -> Self {
        DissipativeQubit { field: effective_field(k, p), u0: p.u0, gamma: p.gamma }
    }

    /// Qubit at `(k_x, k_y)` with `λ + cos k_z` replaced by the mass `m`.
    pub fn from_mass(kx: f64, ky: f64, m: f64, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::param(format!("gamma must be finite and >= 0, got {gamma}")));
        }
        Ok(DissipativeQubit { field: EffectiveField::new(kx.sin(), ky.sin(), m), u0: 0.0, gamma })
    }

    pub fn hamiltonian(&self) -> Mat2 {
        field_hamiltonian(&self.field, self.u0)
    }
}
