// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("configuration has no edges (chain length {0} < 2)")]
    NoEdges(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("correction string is not one of the two final-syndrome candidates")]
    NotACandidate,

    /// The exact transfer-matrix backend keeps one weight per bit configuration.
    #[error("chain length {length} exceeds the transfer-matrix capacity of {max} sites")]
    Capacity { length: usize, max: usize },

    #[error("brute-force oracle is limited to L*T <= {max}, got {cells}")]
    OracleCap { cells: usize, max: usize },

    #[error("quantum cross-check is limited to L = T <= {max}, got L = {length}, T = {steps}")]
    SizeCap { length: usize, steps: usize, max: usize },

    #[error("no crossing in range")]
    NoCrossing,

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("matching failed: {0}")]
    Matching(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag, used by the command-line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::NoEdges(_) => "no_edges",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::NotACandidate => "not_a_candidate",
            Error::Capacity { .. } => "capacity",
            Error::OracleCap { .. } => "oracle_cap",
            Error::SizeCap { .. } => "size_cap",
            Error::NoCrossing => "no_crossing",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Matching(_) => "matching",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}
