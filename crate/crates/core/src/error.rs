// Copyright 2026 The weylsim Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `γ = 0`, `sin k_x = sin k_y = 0` and `λ + cos k_z = 0` at once: the
    /// Liouvillian vanishes identically.
    #[error("steady state undefined (zero Liouvillian)")]
    ZeroLiouvillian,

    #[error(
        "non-unique steady state: second-smallest Liouvillian singular value {second:.3e} is below {threshold:.0e}"
    )]
    NonUniqueSteadyState { second: f64, threshold: f64 },

    #[error("trace drifted by {drift:.3e} at t = {time}; retry with a smaller dt")]
    TraceDrift { time: f64, drift: f64 },

    #[error("malformed table: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit status for this failure class: 2 for parameter
    /// validation, 3 for numerical failures, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) => 2,
            Error::ZeroLiouvillian | Error::NonUniqueSteadyState { .. } | Error::TraceDrift { .. } => 3,
            Error::Table(_) | Error::Io(_) | Error::Csv(_) | Error::Json(_) => 4,
        }
    }
}
