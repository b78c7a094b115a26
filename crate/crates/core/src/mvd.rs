// SPDX-License-Identifier: Apache-2.0

//! Majority voting, applied separately to every run of measured edges in
//! every step.
//!
//! Within a run the measured syndromes fix the bits up to a global flip of
//! the run. Of the two options the decoder keeps the one closer to its
//! previous tentative configuration. Equal distances are settled by a coin.
//! Sites with no measured neighbouring edge keep their bit.

use crate::lattice::{BitConfig, Outcome, SyndromeRecord};
use crate::sampler::RngStream;

/// Sites `start..=end` joined by measured edges in grid row `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub row: usize,
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn sites(&self) -> usize {
        self.end - self.start + 1
    }
}

/// Maximal runs of measured edges in one row, covering every site.
pub fn segments_at(record: &SyndromeRecord, row: usize) -> Vec<Segment> {
    runs(record.row(row), record.length())
        .map(|(start, end)| Segment { row, start, end })
        .collect()
}

fn runs(row: &[Option<Outcome>], length: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    let mut start = 0;
    (0..length).filter_map(move |i| {
        let joined_right = i + 1 < length && row[i].is_some();
        if joined_right {
            None
        } else {
            let run = (start, i);
            start = i + 1;
            Some(run)
        }
    })
}

/// The decoder state between steps, so that a trajectory can be extended
/// one row at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityVoter {
    tentative: BitConfig,
}

impl MajorityVoter {
    pub fn new(length: usize) -> Self {
        MajorityVoter { tentative: BitConfig::zeros(length) }
    }

    pub fn tentative(&self) -> &BitConfig {
        &self.tentative
    }

    pub fn into_tentative(self) -> BitConfig {
        self.tentative
    }

    /// Absorbs one row of results; `None` marks an unmeasured edge.
    pub fn step(&mut self, row: &[Option<Outcome>], rng: &mut RngStream) {
        let length = self.tentative.len();
        debug_assert_eq!(row.len() + 1, length);
        for (start, end) in runs(row, length) {
            if start == end {
                continue;
            }
            // Option A starts the run at 0; option B is its complement.
            let mut option_a = Vec::with_capacity(end - start + 1);
            let mut bit = false;
            option_a.push(bit);
            for s in &row[start..end] {
                bit ^= s.expect("inside a run").is_minus();
                option_a.push(bit);
            }
            let flips_a = option_a
                .iter()
                .enumerate()
                .filter(|&(k, &b)| b != self.tentative.get(start + k))
                .count();
            let flips_b = option_a.len() - flips_a;
            let take_b = match flips_a.cmp(&flips_b) {
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => rng.coin(),
            };
            for (k, b) in option_a.into_iter().enumerate() {
                self.tentative.set(start + k, b ^ take_b);
            }
        }
    }

    pub fn step_complete(&mut self, row: &[Outcome], rng: &mut RngStream) {
        let row: Vec<Option<Outcome>> = row.iter().copied().map(Some).collect();
        self.step(&row, rng);
    }
}

pub fn decode_mvd(record: &SyndromeRecord, rng: &mut RngStream) -> BitConfig {
    let mut voter = MajorityVoter::new(record.length());
    for r in 0..record.steps() {
        voter.step(record.row(r), rng);
    }
    voter.into_tentative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Outcome::{Minus as M, Plus as P};

    fn rng() -> RngStream {
        RngStream::decoder(0, 0)
    }

    #[test]
    fn segments_follow_measured_runs() {
        let rec = SyndromeRecord::from_rows(
            5,
            &[vec![Some(P), None, Some(P), Some(P)], vec![None; 4], vec![Some(P); 4]],
        )
        .unwrap();
        let spans = |r| segments_at(&rec, r).iter().map(|s| (s.start, s.end)).collect::<Vec<_>>();
        assert_eq!(spans(0), vec![(0, 1), (2, 4)]);
        assert_eq!(spans(1), vec![(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(spans(2), vec![(0, 4)]);
    }

    #[test]
    fn fewer_flips_wins() {
        let rec = SyndromeRecord::from_rows(5, &[vec![Some(P), Some(M), Some(M), Some(P)]]).unwrap();
        assert_eq!(decode_mvd(&rec, &mut rng()), "00100".parse().unwrap());
    }

    #[test]
    fn two_site_tie_uses_the_coin() {
        let rec = SyndromeRecord::from_rows(2, &[vec![Some(M)]]).unwrap();
        let mut seen = std::collections::HashSet::new();
        for k in 0..64 {
            let c = decode_mvd(&rec, &mut RngStream::decoder(1, k));
            assert!(c == "01".parse().unwrap() || c == "10".parse().unwrap());
            seen.insert(c);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn unconstrained_sites_keep_their_bit() {
        let rec = SyndromeRecord::from_rows(
            3,
            &[vec![Some(M), Some(P)], vec![None, None], vec![Some(M), Some(P)]],
        )
        .unwrap();
        let mut voter = MajorityVoter::new(3);
        let mut r = rng();
        voter.step(rec.row(0), &mut r);
        let after_first = voter.tentative().clone();
        voter.step(rec.row(1), &mut r);
        assert_eq!(voter.tentative(), &after_first);
    }
}
