// SPDX-License-Identifier: Apache-2.0

//! Seeded trajectory sampling and the classical evaluation function.
//!
//! Every random draw goes through an [`RngStream`], a ChaCha8 generator keyed
//! by the master seed and selected by `stream = 4 * index + kind`. A sample
//! set is therefore the same no matter how trajectories are spread over
//! threads. Grids are drawn row by row, sites (or edges) ascending.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{
    BitConfig, ErrorPattern, FlipPattern, Grid, Outcome, Params, SyndromePattern, SyndromeRecord,
};

/// Independent purposes a trajectory index can draw randomness for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamKind {
    /// Error, flip and syndrome patterns.
    Trajectory = 0,
    /// Decoder tie-breaking coins.
    Decoder = 1,
    /// Outcomes of indeterminate quantum measurements.
    Quantum = 2,
}

#[derive(Debug, Clone)]
pub struct RngStream(ChaCha8Rng);

impl RngStream {
    pub fn new(seed: u64, index: u64, kind: StreamKind) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index.wrapping_mul(4).wrapping_add(kind as u64));
        RngStream(rng)
    }

    pub fn trajectory(seed: u64, index: u64) -> Self {
        RngStream::new(seed, index, StreamKind::Trajectory)
    }

    pub fn decoder(seed: u64, index: u64) -> Self {
        RngStream::new(seed, index, StreamKind::Decoder)
    }

    pub fn quantum(seed: u64, index: u64) -> Self {
        RngStream::new(seed, index, StreamKind::Quantum)
    }

    /// True with probability `prob`; exact at 0 and 1.
    pub fn bernoulli(&mut self, prob: f64) -> bool {
        self.0.random::<f64>() < prob
    }

    pub fn coin(&mut self) -> bool {
        self.bernoulli(0.5)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

pub fn sample_error_pattern(params: &Params, rng: &mut RngStream) -> ErrorPattern {
    let mut grid = Grid::filled(params.steps(), params.length(), false);
    for r in 0..params.steps() {
        for i in 0..params.length() {
            grid.set(r, i, rng.bernoulli(params.p()));
        }
    }
    ErrorPattern::new(grid)
}

pub fn sample_flips_direct(params: &Params, rng: &mut RngStream) -> FlipPattern {
    let rate = params.flip_probability();
    let mut grid = Grid::filled(params.steps(), params.length(), false);
    for r in 0..params.steps() {
        for i in 0..params.length() {
            grid.set(r, i, rng.bernoulli(rate));
        }
    }
    FlipPattern::new(grid)
}

/// Each error measurement flips its bit with probability one half. Cells
/// without an error draw nothing.
pub fn sample_flips_two_stage(errors: &ErrorPattern, rng: &mut RngStream) -> FlipPattern {
    let mut grid = Grid::filled(errors.steps(), errors.length(), false);
    for r in 0..errors.steps() {
        for i in 0..errors.length() {
            if errors.contains(r, i) {
                grid.set(r, i, rng.coin());
            }
        }
    }
    FlipPattern::new(grid)
}

/// Rows before the last measure each edge with probability `1 - q`; the last
/// row draws nothing and measures everything.
pub fn sample_syndrome_pattern(params: &Params, rng: &mut RngStream) -> SyndromePattern {
    let edges = params.length() - 1;
    let steps = params.steps();
    let mut grid = Grid::filled(steps, edges, true);
    for r in 0..steps - 1 {
        for e in 0..edges {
            grid.set(r, e, !rng.bernoulli(params.q()));
        }
    }
    SyndromePattern::new(grid).expect("last row is complete")
}

/// One classical realization: flips, configurations `m_0..m_T`, and the
/// syndrome record a decoder gets to see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub flips: FlipPattern,
    pub configs: Vec<BitConfig>,
    pub syndromes: SyndromeRecord,
}

impl Trajectory {
    pub fn final_config(&self) -> &BitConfig {
        self.configs.last().expect("m_0 is always present")
    }
}

pub fn run_classical(flips: &FlipPattern, pattern: &SyndromePattern) -> Result<Trajectory> {
    let (steps, length) = (flips.steps(), flips.length());
    if pattern.steps() != steps || pattern.length() != length {
        return Err(Error::DimensionMismatch(format!(
            "flips are {steps}x{length}, pattern covers {}x{}",
            pattern.steps(),
            pattern.length()
        )));
    }
    let mut configs = Vec::with_capacity(steps + 1);
    let mut m = BitConfig::zeros(length);
    configs.push(m.clone());
    let mut results = Vec::with_capacity(steps * pattern.edges());
    for r in 0..steps {
        for i in 0..length {
            if flips.contains(r, i) {
                m.flip(i);
            }
        }
        for e in 0..pattern.edges() {
            results.push(
                pattern
                    .measured(r, e)
                    .then(|| Outcome::from_bits(m.get(e), m.get(e + 1))),
            );
        }
        configs.push(m.clone());
    }
    let syndromes = SyndromeRecord::new(pattern.clone(), results)?;
    Ok(Trajectory { flips: flips.clone(), configs, syndromes })
}

/// 1 when `c` is exactly the final configuration, 0 otherwise.
pub fn evaluate_fbi(trajectory: &Trajectory, c: &BitConfig) -> Result<f64> {
    let m = trajectory.final_config();
    if c.len() != m.len() {
        return Err(Error::DimensionMismatch(format!(
            "correction of length {} for a chain of {}",
            c.len(),
            m.len()
        )));
    }
    Ok(if c == m { 1.0 } else { 0.0 })
}

/// Draws errors, then flips from those errors, then the syndrome pattern.
/// This is the sampling order shared by every estimator in the crate.
pub(crate) fn sample_two_stage(
    params: &Params,
    rng: &mut RngStream,
) -> (ErrorPattern, FlipPattern, SyndromePattern) {
    let errors = sample_error_pattern(params, rng);
    let flips = sample_flips_two_stage(&errors, rng);
    let pattern = sample_syndrome_pattern(params, rng);
    (errors, flips, pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, q: f64, l: usize, t: usize) -> Params {
        Params::new(p, q, l, t, 11).unwrap()
    }

    #[test]
    fn extreme_rates() {
        let mut rng = RngStream::trajectory(3, 0);
        assert_eq!(sample_error_pattern(&params(0.0, 0.0, 5, 4), &mut rng).grid().count(), 0);
        assert_eq!(sample_error_pattern(&params(1.0, 0.0, 5, 4), &mut rng).grid().count(), 20);
        assert_eq!(sample_flips_direct(&params(0.0, 0.0, 5, 4), &mut rng).grid().count(), 0);
        let full = sample_syndrome_pattern(&params(0.3, 0.0, 5, 4), &mut rng);
        assert_eq!(full.grid().count(), 16);
        let last_only = sample_syndrome_pattern(&params(0.3, 1.0, 5, 4), &mut rng);
        assert_eq!(last_only.grid().count(), 4);
        assert!(last_only.grid().row(3).iter().all(|&m| m));
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let p = params(0.5, 0.5, 9, 9);
        let a = sample_flips_direct(&p, &mut RngStream::trajectory(5, 7));
        let b = sample_flips_direct(&p, &mut RngStream::trajectory(5, 7));
        let c = sample_flips_direct(&p, &mut RngStream::trajectory(5, 8));
        let d = sample_flips_direct(&p, &mut RngStream::decoder(5, 7));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn two_stage_flips_are_a_subset() {
        let p = params(0.6, 0.0, 15, 16);
        let mut rng = RngStream::trajectory(1, 0);
        let errors = sample_error_pattern(&p, &mut rng);
        let flips = sample_flips_two_stage(&errors, &mut rng);
        assert!(flips.grid().is_subset_of(errors.grid()));
        let none = ErrorPattern::new(Grid::filled(4, 4, false));
        assert_eq!(sample_flips_two_stage(&none, &mut rng).grid().count(), 0);
    }

    #[test]
    fn single_flip_trajectory() {
        let flips = FlipPattern::new(Grid::with_cells(2, 3, &[(0, 1)]));
        let traj = run_classical(&flips, &SyndromePattern::full(2, 3)).unwrap();
        let m: BitConfig = "010".parse().unwrap();
        assert_eq!(traj.configs[1], m);
        assert_eq!(traj.configs[2], m);
        for r in 0..2 {
            assert_eq!(traj.syndromes.row(r), &[Some(Outcome::Minus), Some(Outcome::Minus)]);
        }
        assert_eq!(evaluate_fbi(&traj, &m).unwrap(), 1.0);
        assert_eq!(evaluate_fbi(&traj, &m.complement()).unwrap(), 0.0);
        assert_eq!(evaluate_fbi(&traj, &"000".parse().unwrap()).unwrap(), 0.0);
        assert!(evaluate_fbi(&traj, &"00".parse().unwrap()).is_err());
    }

    #[test]
    fn double_flip_cancels() {
        let flips = FlipPattern::new(Grid::with_cells(2, 3, &[(0, 1), (1, 1)]));
        let traj = run_classical(&flips, &SyndromePattern::full(2, 3)).unwrap();
        assert_eq!(traj.final_config(), &BitConfig::zeros(3));
        assert_eq!(traj.syndromes.final_row(), vec![Outcome::Plus, Outcome::Plus]);
    }

    #[test]
    fn no_flips_gives_trivial_record() {
        let flips = FlipPattern::new(Grid::filled(3, 5, false));
        let traj = run_classical(&flips, &SyndromePattern::full(3, 5)).unwrap();
        assert!(traj.configs.iter().all(|m| m.count_ones() == 0));
        assert!((0..3).all(|r| traj.syndromes.row(r).iter().all(|&s| s == Some(Outcome::Plus))));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let flips = FlipPattern::new(Grid::filled(3, 5, false));
        assert!(run_classical(&flips, &SyndromePattern::full(2, 5)).is_err());
        assert!(run_classical(&flips, &SyndromePattern::full(3, 7)).is_err());
    }
}
