// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical toolkit for a two-band Weyl-semimetal Hamiltonian coupled to an
//! amplitude-damping reservoir.
//!
//! At every momentum `k` the band Hamiltonian is a qubit in an effective field
//! `B(k) = (sin k_x, sin k_y, λ + cos k_z)`. The crate provides
//!
//! * [`model`]: momentum points, the effective field, `H(k)` and its bands;
//! * [`steady`]: the closed-form Lindblad steady state, purity and Bloch data;
//! * [`dynamics`]: master-equation right-hand sides, fixed-step RK4
//!   trajectories and a Liouvillian null-space steady-state solver;
//! * [`scan`]: Brillouin-zone surfaces, mass sweeps and band-touching search;
//! * [`io`]: run configuration and CSV/JSON table serialization.
//!
//! The basis is `{|e⟩, |g⟩}` with `|e⟩ = (1, 0)ᵀ` and `σ_z|e⟩ = +|e⟩`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod io;
pub mod linalg;
pub mod model;
pub mod scan;
pub mod steady;

pub use dynamics::{
    build_liouvillian, coherence_series, component_rhs, fit_decay_rate, integrate, lindblad_rhs, steady_state_numeric,
    DecayFit, IntegrateOptions, Liouvillian, Trajectory,
};
pub use error::{Error, Result};
pub use linalg::{Mat2, C64};
pub use model::{
    band_gap, effective_field, energy_bands, hamiltonian, mass_parameter, realize_mass, DissipativeQubit,
    EffectiveField, ModelParams, MomentumPoint,
};
pub use scan::{
    band_surface, bloch_trajectory_of_steady_states, find_band_touchings, purity_surface, transition_sweep, Grid2D,
    SweepResult,
};
pub use steady::{
    bloch_radius, bloch_vector, purity, purity_closed_form, steady_state, BlochVector, DensityMatrix, SteadyState,
};
