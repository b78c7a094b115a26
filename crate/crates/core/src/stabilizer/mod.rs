// SPDX-License-Identifier: Apache-2.0

//! The quantum side of the model and the full-knowledge decoder.
//!
//! [`run_quantum`] evolves `|0...0>` through the measured operators and
//! records the syndromes. The encoded amplitudes survive exactly when `Z_0`
//! is still in the stabilizer group at the end, in which case the state is a
//! computational basis state `|m>` and the correct correction is `m`.

mod percolation;
mod tableau;

pub use percolation::cluster_survives;
pub(crate) use percolation::ClusterFront;
pub use tableau::{Pauli, Tableau, MAX_QUBITS};

use crate::error::{Error, Result};
use crate::lattice::{BitConfig, ErrorPattern, Params, SyndromePattern, SyndromeRecord};
use crate::metrics::{estimate_pd, Decoder, Estimate};
use crate::sampler::RngStream;

#[derive(Debug, Clone)]
pub struct QuantumRunResult {
    pub syndromes: SyndromeRecord,
    pub final_state: Tableau,
    pub survived: bool,
    logical: Option<BitConfig>,
}

impl QuantumRunResult {
    /// The basis state the chain ended in, when the amplitudes survived.
    pub fn logical_state(&self) -> Option<&BitConfig> {
        self.logical.as_ref()
    }
}

pub fn run_quantum(
    errors: &ErrorPattern,
    pattern: &SyndromePattern,
    rng: &mut RngStream,
) -> Result<QuantumRunResult> {
    let (steps, length) = (errors.steps(), errors.length());
    if pattern.steps() != steps || pattern.length() != length {
        return Err(Error::DimensionMismatch(format!(
            "errors are {steps}x{length}, pattern covers {}x{}",
            pattern.steps(),
            pattern.length()
        )));
    }
    if length > MAX_QUBITS {
        return Err(Error::Capacity { length, max: MAX_QUBITS });
    }
    let mut state = Tableau::zero_state(length);
    let mut results = Vec::with_capacity(steps * pattern.edges());
    for r in 0..steps {
        for i in 0..length {
            if errors.contains(r, i) {
                state.measure(&Pauli::x(i), rng);
            }
        }
        for e in 0..pattern.edges() {
            results.push(
                pattern
                    .measured(r, e)
                    .then(|| state.measure(&Pauli::zz(e, e + 1), rng)),
            );
        }
    }
    let syndromes = SyndromeRecord::new(pattern.clone(), results)?;
    let logical = state.expectation(&Pauli::z(0)).map(|first| {
        let mut bits = Vec::with_capacity(length);
        let mut bit = first.is_minus();
        bits.push(bit);
        for s in syndromes.final_row() {
            bit ^= s.is_minus();
            bits.push(bit);
        }
        BitConfig::from_bits(bits)
    });
    Ok(QuantumRunResult { syndromes, final_state: state, survived: logical.is_some(), logical })
}

/// 1 for the correction that restores `|0...0>`, 0 for its complement and
/// 1/2 for either candidate once the amplitudes are lost.
pub fn evaluate_fqm(result: &QuantumRunResult, c: &BitConfig) -> Result<f64> {
    if !result.syndromes.is_candidate(c) {
        return Err(Error::NotACandidate);
    }
    Ok(match &result.logical {
        Some(m) if m == c => 1.0,
        Some(_) => 0.0,
        None => 0.5,
    })
}

/// Decoding probability with full knowledge of the trajectory: 1 when the
/// initial cluster survives and 1/2 otherwise.
pub fn full_knowledge_pd(params: &Params, n: usize) -> Result<Estimate> {
    estimate_pd(Decoder::FullKnowledge, params, n)
}
