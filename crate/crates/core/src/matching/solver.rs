// SPDX-License-Identifier: Apache-2.0

//! Thin layer over the fusion-blossom solver plus the contracted lattice
//! used by the fast decoding path.

use fusion_blossom::dual_module::{DualNodeClass, DualNodePtr};
use fusion_blossom::mwpm_solver::{PrimalDualSolver, SolverSerial};
use fusion_blossom::util::{SolverInitializer, SyndromePattern as FusionSyndrome};

use crate::lattice::{BitConfig, SyndromeRecord};

/// Result of one blossom run, in caller vertex ids.
#[derive(Debug, Clone, Default)]
pub(crate) struct BlossomOutcome {
    pub pairs: Vec<(usize, usize)>,
    pub to_virtual: Vec<(usize, usize)>,
    pub weight: u64,
}

/// Exact minimum-weight perfect matching of `defects`, where any number of
/// defects may end on virtual vertices. Weights are in crossing units.
pub(crate) fn blossom(
    vertex_num: usize,
    edges: &[(usize, usize, u32)],
    virtual_vertices: Vec<usize>,
    defects: Vec<usize>,
) -> BlossomOutcome {
    if defects.is_empty() {
        return BlossomOutcome::default();
    }
    // The solver wants even weights.
    let weighted: Vec<_> = edges.iter().map(|&(a, b, w)| (a, b, 2 * w as isize)).collect();
    let init = SolverInitializer::new(vertex_num, weighted, virtual_vertices);
    let mut solver = SolverSerial::new(&init);
    solver.solve(&FusionSyndrome::new_vertices(defects));
    let weight = solver.sum_dual_variables();
    let matching = solver.perfect_matching();
    BlossomOutcome {
        pairs: matching
            .peer_matchings
            .iter()
            .map(|(a, b)| (vertex_of(a), vertex_of(b)))
            .collect(),
        to_virtual: matching
            .virtual_matchings
            .iter()
            .map(|(a, v)| (vertex_of(a), *v))
            .collect(),
        weight: (weight / 2) as u64,
    }
}

fn vertex_of(node: &DualNodePtr) -> usize {
    match &node.read_recursive().class {
        DualNodeClass::DefectVertex { defect_index } => *defect_index,
        DualNodeClass::Blossom { .. } => unreachable!("perfect matchings expand every blossom"),
    }
}

/// Matches on the lattice with every weight-0 vertical run collapsed into a
/// single vertex. Each row has one virtual vertex per side.
pub(crate) fn decode_contracted(record: &SyndromeRecord) -> (BitConfig, u64) {
    let length = record.length();
    let cols = record.edges();
    let steps = record.steps();
    if cols == 0 {
        return (BitConfig::zeros(length), 0);
    }

    let mut run_of = vec![0usize; steps * cols];
    let mut column = Vec::new();
    let mut defects = Vec::new();
    let mut open = vec![true; cols];
    let mut current = vec![0usize; cols];
    let mut last = vec![false; cols];
    for r in 0..steps {
        for e in 0..cols {
            if open[e] {
                current[e] = column.len();
                column.push(e + 1);
                open[e] = false;
            }
            run_of[r * cols + e] = current[e];
            if let Some(s) = record.result(r, e) {
                if s.is_minus() != last[e] {
                    defects.push(current[e]);
                }
                last[e] = s.is_minus();
                open[e] = true;
            }
        }
    }

    let runs = column.len();
    let mut edges = Vec::with_capacity(steps * (cols + 1));
    let mut virtual_vertices = Vec::with_capacity(2 * steps);
    for r in 0..steps {
        let (left, right) = (runs + 2 * r, runs + 2 * r + 1);
        virtual_vertices.extend([left, right]);
        edges.push((run_of[r * cols], left, 1));
        edges.push((run_of[r * cols + cols - 1], right, 1));
        for e in 0..cols - 1 {
            let (a, b) = (run_of[r * cols + e], run_of[r * cols + e + 1]);
            let repeated = r > 0 && run_of[(r - 1) * cols + e] == a && run_of[(r - 1) * cols + e + 1] == b;
            if !repeated {
                edges.push((a, b, 1));
            }
        }
    }

    let outcome = blossom(runs + 2 * steps, &edges, virtual_vertices, defects);
    let column_of = |v: usize| {
        if v < runs {
            column[v]
        } else if (v - runs) % 2 == 0 {
            0
        } else {
            length
        }
    };
    let ends = outcome
        .pairs
        .iter()
        .chain(&outcome.to_virtual)
        .map(|&(a, b)| (column_of(a), column_of(b)));
    (correction_from_columns(length, ends), outcome.weight)
}

/// A path between dual columns `a` and `b` crosses qubits `min..max` an odd
/// number of times, whatever its shape.
pub(crate) fn correction_from_columns(
    length: usize,
    ends: impl Iterator<Item = (usize, usize)>,
) -> BitConfig {
    let mut toggles = vec![false; length + 1];
    for (a, b) in ends {
        toggles[a] ^= true;
        toggles[b] ^= true;
    }
    let mut bit = false;
    BitConfig::from_bits(
        (0..length)
            .map(|i| {
                bit ^= toggles[i];
                bit
            })
            .collect(),
    )
}
