// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use ptim::stabilizer::Pauli;
use ptim::{
    candidate_strings, cluster_survives, decode_mld, decode_mvd, decode_mwpm, decode_mwpm_weighted, extract_defects,
    run_classical, run_quantum, syndrome_of_config, BitConfig, ErrorPattern, FlipPattern, Grid, Outcome,
    RngStream, SyndromePattern, SyndromeRecord, Tableau,
};

fn odd_length(max: usize) -> impl Strategy<Value = usize> {
    (0..=(max - 1) / 2).prop_map(|h| 2 * h + 1)
}

fn grid(rows: usize, cols: usize, density: f64) -> impl Strategy<Value = Grid> {
    proptest::collection::vec(proptest::bool::weighted(density), rows * cols).prop_map(move |cells| {
        let mut g = Grid::filled(rows, cols, false);
        for (k, &v) in cells.iter().enumerate() {
            g.set(k / cols.max(1), k % cols.max(1), v);
        }
        g
    })
}

/// Flip grid and syndrome pattern of matching shape, last row complete.
fn trajectory_inputs(max_length: usize, max_steps: usize) -> impl Strategy<Value = (FlipPattern, SyndromePattern)> {
    (odd_length(max_length), 1..=max_steps, 0.05..0.6f64, 0.0..1.0f64).prop_flat_map(|(l, t, p, q)| {
        (grid(t, l, p), grid(t, l - 1, 1.0 - q)).prop_map(move |(flips, mut measured)| {
            for e in 0..l - 1 {
                measured.set(t - 1, e, true);
            }
            (FlipPattern::new(flips), SyndromePattern::new(measured).unwrap())
        })
    })
}

fn mirrored(record: &SyndromeRecord) -> SyndromeRecord {
    let rows: Vec<Vec<Option<Outcome>>> =
        (0..record.steps()).map(|r| record.row(r).iter().rev().copied().collect()).collect();
    SyndromeRecord::from_rows(record.length(), &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn candidates_round_trip(bits in proptest::collection::vec(any::<bool>(), 2..40)) {
        let m = BitConfig::from_bits(bits);
        let (c, c_bar) = candidate_strings(&syndrome_of_config(&m).unwrap());
        prop_assert!(!c.get(0));
        prop_assert_eq!(c.complement(), c_bar.clone());
        prop_assert!(m == c || m == c_bar);
        prop_assert_eq!(syndrome_of_config(&c).unwrap(), syndrome_of_config(&m).unwrap());
    }

    #[test]
    fn trajectories_are_self_consistent((flips, pattern) in trajectory_inputs(11, 8)) {
        let traj = run_classical(&flips, &pattern).unwrap();
        prop_assert_eq!(traj.configs.len(), flips.steps() + 1);
        prop_assert_eq!(traj.configs[0].count_ones(), 0);
        for r in 0..flips.steps() {
            let changed: Vec<bool> =
                (0..flips.length()).map(|i| traj.configs[r].get(i) != traj.configs[r + 1].get(i)).collect();
            prop_assert_eq!(changed.as_slice(), flips.grid().row(r));
            if flips.length() > 1 {
                let full = syndrome_of_config(&traj.configs[r + 1]).unwrap();
                for (e, s) in traj.syndromes.row(r).iter().enumerate() {
                    prop_assert_eq!(*s, pattern.measured(r, e).then_some(full[e]));
                }
            }
        }
        prop_assert_eq!(run_classical(&flips, &pattern).unwrap(), traj);
    }

    #[test]
    fn every_decoder_respects_the_final_syndrome((flips, pattern) in trajectory_inputs(9, 6), seed in any::<u64>()) {
        let traj = run_classical(&flips, &pattern).unwrap();
        let record = &traj.syndromes;
        prop_assert!(record.is_candidate(&decode_mvd(record, &mut RngStream::decoder(seed, 0))));
        prop_assert!(record.is_candidate(&decode_mwpm(record)));
        prop_assert!(record.is_candidate(&decode_mld(record, 0.3, &mut RngStream::decoder(seed, 0)).unwrap()));
    }

    #[test]
    fn defects_per_edge_match_final_sign((flips, pattern) in trajectory_inputs(13, 8)) {
        let traj = run_classical(&flips, &pattern).unwrap();
        let defects = extract_defects(&traj.syndromes);
        let last = traj.syndromes.final_row();
        for (e, s) in last.iter().enumerate() {
            let on_edge = defects.iter().filter(|d| d.edge == e).count();
            prop_assert_eq!(on_edge % 2 == 1, s.is_minus());
        }
        for d in &defects {
            prop_assert!(traj.syndromes.result(d.row, d.edge).is_some());
        }
    }

    #[test]
    fn matching_weight_is_mirror_symmetric((flips, pattern) in trajectory_inputs(13, 8)) {
        let traj = run_classical(&flips, &pattern).unwrap();
        let (_, w) = decode_mwpm_weighted(&traj.syndromes);
        let (_, w_mirror) = decode_mwpm_weighted(&mirrored(&traj.syndromes));
        prop_assert_eq!(w, w_mirror);
        // Never more than the true number of flips.
        prop_assert!(w <= flips.grid().count() as u64);
    }

    #[test]
    fn defect_position_within_its_gap_is_irrelevant((flips, pattern) in trajectory_inputs(11, 8)) {
        // The contracted matcher sees each unmeasured gap as one vertex, so
        // it is blind to where in the gap a defect sits. The defect graph
        // pins every defect to the row of its measurement.
        let traj = run_classical(&flips, &pattern).unwrap();
        let graph = ptim::build_defect_graph(&traj.syndromes);
        let pinned = ptim::min_weight_perfect_matching(&graph).unwrap().weight;
        prop_assert_eq!(u64::from(pinned), decode_mwpm_weighted(&traj.syndromes).1);
    }

    #[test]
    fn clear_winner_ignores_the_coin_stream((flips, pattern) in trajectory_inputs(7, 5), p in 0.05..0.9f64) {
        let traj = run_classical(&flips, &pattern).unwrap();
        let [(_, wc), (_, wb)] = ptim::candidate_weights(&traj.syndromes, p).unwrap();
        if wc != wb {
            let a = decode_mld(&traj.syndromes, p, &mut RngStream::decoder(1, 0)).unwrap();
            let b = decode_mld(&traj.syndromes, p, &mut RngStream::decoder(2, 7)).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn tableau_stays_valid(ops in proptest::collection::vec((any::<bool>(), 0usize..6), 1..60), seed in any::<u64>()) {
        let mut rng = RngStream::quantum(seed, 0);
        let mut t = Tableau::zero_state(7);
        for (is_x, i) in ops {
            let op = if is_x { Pauli::x(i) } else { Pauli::zz(i, i + 1) };
            let outcome = t.measure(&op, &mut rng);
            prop_assert_eq!(t.expectation(&op), Some(outcome));
            prop_assert!(t.is_valid());
        }
    }

    #[test]
    fn survival_does_not_depend_on_outcomes(
        (l, t) in (odd_length(9), 1usize..7),
        p in 0.0..0.8f64,
        q in 0.0..1.0f64,
        seeds in (any::<u64>(), any::<u64>()),
    ) {
        let (errors, pattern) = {
            let mut rng = RngStream::trajectory(seeds.0, 0);
            let params = ptim::Params::new(p, q, l, t, 0).unwrap();
            (ptim::sample_error_pattern(&params, &mut rng), ptim::sample_syndrome_pattern(&params, &mut rng))
        };
        let expected = cluster_survives(&errors, &pattern).unwrap();
        for s in [seeds.0, seeds.1] {
            let run = run_quantum(&errors, &pattern, &mut RngStream::quantum(s, 3)).unwrap();
            prop_assert_eq!(run.survived, expected);
            if let Some(state) = run.logical_state() {
                prop_assert!(run.syndromes.is_candidate(state));
            }
        }
    }

    #[test]
    fn error_free_quantum_run_is_trivial(l in odd_length(11), t in 1usize..6) {
        let errors = ErrorPattern::new(Grid::filled(t, l, false));
        let run = run_quantum(&errors, &SyndromePattern::full(t, l), &mut RngStream::quantum(0, 0)).unwrap();
        prop_assert_eq!(run.logical_state(), Some(&BitConfig::zeros(l)));
    }
}
