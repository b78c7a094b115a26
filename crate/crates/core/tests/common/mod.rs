// SPDX-License-Identifier: Apache-2.0

//! Helpers shared by the oracle and acceptance suites.

use ptim::{
    run_classical, sample_error_pattern, sample_flips_two_stage, sample_syndrome_pattern, Params, RngStream,
    StreamKind, SyndromeRecord, Trajectory,
};
use rand::Rng;

/// A random small trajectory with its parameters.
pub fn random_instance(k: u64, max_length: usize, max_steps: usize) -> (Params, Trajectory) {
    let mut pick = RngStream::new(0xfeed, k, StreamKind::Decoder);
    let length = 2 * pick.random_range(0..=(max_length - 1) / 2) + 1;
    let steps = pick.random_range(1..=max_steps);
    let params = Params::new(pick.random(), pick.random(), length, steps, 99).unwrap();
    let mut rng = RngStream::trajectory(99, k);
    let errors = sample_error_pattern(&params, &mut rng);
    let flips = sample_flips_two_stage(&errors, &mut rng);
    let pattern = sample_syndrome_pattern(&params, &mut rng);
    (params, run_classical(&flips, &pattern).unwrap())
}

/// Fewest flips of any history that reproduces the record, per final
/// configuration (`u32::MAX` when unreachable).
pub fn min_flips(record: &SyndromeRecord) -> Vec<u32> {
    let n = 1usize << record.length();
    let mut cost = vec![u32::MAX; n];
    cost[0] = 0;
    for r in 0..record.steps() {
        let mut next = vec![u32::MAX; n];
        for (y, slot) in next.iter_mut().enumerate() {
            let consistent = record.row(r).iter().enumerate().all(|(e, s)| match s {
                Some(s) => ((y >> e) ^ (y >> (e + 1))) & 1 == usize::from(s.is_minus()),
                None => true,
            });
            if consistent {
                *slot = (0..n)
                    .filter(|&x| cost[x] != u32::MAX)
                    .map(|x| cost[x] + (x ^ y).count_ones())
                    .min()
                    .unwrap_or(u32::MAX);
            }
        }
        cost = next;
    }
    cost
}
