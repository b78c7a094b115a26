// SPDX-License-Identifier: Apache-2.0

//! Maximum-likelihood decoding by an exact forward sum over bit histories.
//!
//! The forward vector holds, for every configuration `x` of the chain, the
//! total weight of flip histories that end in `x` and agree with every
//! syndrome seen so far. A step applies the independent per-bit flip kernel
//! one bit at a time and then zeroes configurations that contradict the
//! measured results. The vector is rescaled to a maximum of one after each
//! step and the scale is kept as a logarithm.
//!
//! The probability of the syndrome pattern is the same for both candidates,
//! so `q` never enters the comparison.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::{candidate_strings, check_probability, BitConfig, Outcome, SyndromeRecord};
use crate::sampler::RngStream;

/// Longest chain the forward vector is allowed to cover (`2^22` entries).
pub const MAX_LENGTH: usize = 22;

/// Largest `L * T` accepted by the brute-force oracle.
pub const ORACLE_MAX_CELLS: usize = 20;

/// Unnormalized class probability as a natural logarithm, with an explicit
/// flag for an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassWeight {
    log: f64,
    zero: bool,
}

impl ClassWeight {
    pub fn zero() -> Self {
        ClassWeight { log: 0.0, zero: true }
    }

    pub fn from_log(log: f64) -> Self {
        debug_assert!(log.is_finite());
        ClassWeight { log, zero: false }
    }

    fn from_linear(value: f64, log_scale: f64) -> Self {
        if value > 0.0 {
            ClassWeight::from_log(value.ln() + log_scale)
        } else {
            ClassWeight::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `None` for an exact zero.
    pub fn ln(&self) -> Option<f64> {
        (!self.zero).then_some(self.log)
    }

    pub fn value(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            self.log.exp()
        }
    }
}

impl PartialOrd for ClassWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.zero, other.zero) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => self.log.partial_cmp(&other.log),
        }
    }
}

/// Forward vector over all `2^L` configurations, advanced one step at a
/// time.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    length: usize,
    stay: f64,
    flip: f64,
    weights: Vec<f64>,
    log_scale: f64,
    dead: bool,
}

impl TransferMatrix {
    pub fn new(length: usize, p: f64) -> Result<Self> {
        check_probability("p", p)?;
        if length > MAX_LENGTH {
            return Err(Error::Capacity { length, max: MAX_LENGTH });
        }
        let mut weights = vec![0.0; 1 << length];
        weights[0] = 1.0;
        Ok(TransferMatrix {
            length,
            stay: 1.0 - p / 2.0,
            flip: p / 2.0,
            weights,
            log_scale: 0.0,
            dead: false,
        })
    }

    /// One step: flips, then the syndrome row (`None` = not measured).
    pub fn absorb(&mut self, row: &[Option<Outcome>]) {
        debug_assert_eq!(row.len() + 1, self.length);
        if self.dead {
            return;
        }
        let n = self.weights.len();
        for i in 0..self.length {
            let bit = 1 << i;
            for base in (0..n).step_by(2 * bit) {
                for x in base..base + bit {
                    let (a, b) = (self.weights[x], self.weights[x | bit]);
                    self.weights[x] = self.stay * a + self.flip * b;
                    self.weights[x | bit] = self.flip * a + self.stay * b;
                }
            }
        }
        let (mut measured, mut minus) = (0usize, 0usize);
        for (e, s) in row.iter().enumerate() {
            if let Some(s) = s {
                measured |= 1 << e;
                if s.is_minus() {
                    minus |= 1 << e;
                }
            }
        }
        if measured != 0 {
            for (x, w) in self.weights.iter_mut().enumerate() {
                if (x ^ (x >> 1)) & measured != minus {
                    *w = 0.0;
                }
            }
        }
        let max = self.weights.iter().fold(0.0f64, |m, &w| m.max(w));
        if max > 0.0 {
            self.weights.iter_mut().for_each(|w| *w /= max);
            self.log_scale += max.ln();
        } else {
            self.dead = true;
        }
    }

    pub fn absorb_complete(&mut self, row: &[Outcome]) {
        let row: Vec<Option<Outcome>> = row.iter().copied().map(Some).collect();
        self.absorb(&row);
    }

    pub fn weight_of(&self, config: &BitConfig) -> ClassWeight {
        if self.dead {
            return ClassWeight::zero();
        }
        ClassWeight::from_linear(self.weights[config.to_index()], self.log_scale)
    }
}

fn forward(record: &SyndromeRecord, p: f64) -> Result<TransferMatrix> {
    let mut tm = TransferMatrix::new(record.length(), p)?;
    for r in 0..record.steps() {
        tm.absorb(record.row(r));
    }
    Ok(tm)
}

/// Log of the total probability of flip histories that reproduce the
/// record and end in `c`.
pub fn class_log_probability(record: &SyndromeRecord, c: &BitConfig, p: f64) -> Result<ClassWeight> {
    if !record.is_candidate(c) {
        return Err(Error::NotACandidate);
    }
    Ok(forward(record, p)?.weight_of(c))
}

/// Weights of both candidates `(C, C̄)` from one forward pass.
pub fn candidate_weights(record: &SyndromeRecord, p: f64) -> Result<[(BitConfig, ClassWeight); 2]> {
    let tm = forward(record, p)?;
    let (c, c_bar) = candidate_strings(&record.final_row());
    let (wc, wb) = (tm.weight_of(&c), tm.weight_of(&c_bar));
    Ok([(c, wc), (c_bar, wb)])
}

/// Same quantity by summing over every flip grid. Exponential in `L * T`.
pub fn brute_force_class_probability(
    record: &SyndromeRecord,
    c: &BitConfig,
    p: f64,
) -> Result<ClassWeight> {
    check_probability("p", p)?;
    let (length, steps) = (record.length(), record.steps());
    let cells = length * steps;
    if cells > ORACLE_MAX_CELLS {
        return Err(Error::OracleCap { cells, max: ORACLE_MAX_CELLS });
    }
    if !record.is_candidate(c) {
        return Err(Error::NotACandidate);
    }
    let (stay, flip) = (1.0 - p / 2.0, p / 2.0);
    let mut total = 0.0;
    'grids: for grid in 0u64..1 << cells {
        let mut m = vec![false; length];
        for r in 0..steps {
            for (i, bit) in m.iter_mut().enumerate() {
                *bit ^= grid >> (r * length + i) & 1 == 1;
            }
            for e in 0..length - 1 {
                if let Some(s) = record.result(r, e) {
                    if Outcome::from_bits(m[e], m[e + 1]) != s {
                        continue 'grids;
                    }
                }
            }
        }
        if m != c.bits() {
            continue;
        }
        let flips = grid.count_ones() as i32;
        total += flip.powi(flips) * stay.powi(cells as i32 - flips);
    }
    Ok(ClassWeight::from_linear(total, 0.0))
}

/// Picks the more probable candidate; an exact tie is settled by one coin.
pub fn decode_mld(record: &SyndromeRecord, p: f64, rng: &mut RngStream) -> Result<BitConfig> {
    let [(c, wc), (c_bar, wb)] = candidate_weights(record, p)?;
    Ok(choose(c, wc, c_bar, wb, rng))
}

pub(crate) fn choose(
    c: BitConfig,
    wc: ClassWeight,
    c_bar: BitConfig,
    wb: ClassWeight,
    rng: &mut RngStream,
) -> BitConfig {
    match wc.partial_cmp(&wb) {
        Some(Ordering::Greater) => c,
        Some(Ordering::Less) => c_bar,
        _ => {
            if rng.coin() {
                c_bar
            } else {
                c
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Outcome::{Minus as M, Plus as P};

    fn close(a: ClassWeight, b: f64) -> bool {
        (a.value() - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn single_step_weights() {
        let rec = SyndromeRecord::from_rows(3, &[vec![Some(M), Some(P)]]).unwrap();
        let c: BitConfig = "100".parse().unwrap();
        let c_bar: BitConfig = "011".parse().unwrap();
        assert!(close(class_log_probability(&rec, &c, 0.4).unwrap(), 0.128));
        assert!(close(class_log_probability(&rec, &c_bar, 0.4).unwrap(), 0.032));
        assert!(close(brute_force_class_probability(&rec, &c, 0.4).unwrap(), 0.128));
        assert!(close(brute_force_class_probability(&rec, &c_bar, 0.4).unwrap(), 0.032));
        assert_eq!(decode_mld(&rec, 0.4, &mut RngStream::decoder(0, 0)).unwrap(), c);
    }

    #[test]
    fn quiet_record_decodes_to_zero() {
        let rec = SyndromeRecord::from_rows(5, &vec![vec![Some(P); 4]; 3]).unwrap();
        for p in [0.05, 0.5, 0.95] {
            assert_eq!(decode_mld(&rec, p, &mut RngStream::decoder(0, 0)).unwrap(), BitConfig::zeros(5));
        }
    }

    #[test]
    fn symmetric_pair_is_a_coin() {
        let rec = SyndromeRecord::from_rows(2, &[vec![Some(M)]]).unwrap();
        let [(_, wc), (_, wb)] = candidate_weights(&rec, 0.3).unwrap();
        assert_eq!(wc, wb);
        let outcomes: std::collections::HashSet<_> = (0..64)
            .map(|k| decode_mld(&rec, 0.3, &mut RngStream::decoder(2, k)).unwrap())
            .collect();
        assert_eq!(outcomes.len(), 2);
    }

    #[test]
    fn rejects_non_candidates_and_oversize() {
        let rec = SyndromeRecord::from_rows(3, &[vec![Some(M), Some(P)]]).unwrap();
        assert!(matches!(
            class_log_probability(&rec, &"000".parse().unwrap(), 0.2),
            Err(Error::NotACandidate)
        ));
        let long = SyndromeRecord::from_rows(23, &[vec![Some(P); 22]]).unwrap();
        assert!(matches!(
            class_log_probability(&long, &BitConfig::zeros(23), 0.2),
            Err(Error::Capacity { .. })
        ));
        let wide = SyndromeRecord::from_rows(7, &vec![vec![Some(P); 6]; 3]).unwrap();
        assert!(matches!(
            brute_force_class_probability(&wide, &BitConfig::zeros(7), 0.2),
            Err(Error::OracleCap { .. })
        ));
    }

    #[test]
    fn impossible_record_has_zero_weight() {
        // With p = 0 nothing can flip, so a -1 result is impossible.
        let rec = SyndromeRecord::from_rows(3, &[vec![Some(M), Some(P)]]).unwrap();
        let [(_, wc), (_, wb)] = candidate_weights(&rec, 0.0).unwrap();
        assert!(wc.is_zero() && wb.is_zero());
    }
}
