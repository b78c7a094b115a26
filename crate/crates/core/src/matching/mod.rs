// SPDX-License-Identifier: Apache-2.0

//! Minimum-weight perfect matching decoder.
//!
//! A defect sits wherever the measured value of an edge differs from its
//! previous measured value (the first measurement is compared with +1). The
//! defect is placed at the row of the later measurement. Defects are paired
//! with each other or with the chain ends along paths of fewest qubit
//! crossings, and qubit `i` is flipped when the paths cross it an odd number
//! of times.
//!
//! Two exact routes are provided. [`min_weight_perfect_matching`] works on
//! the complete [`DefectGraph`] and also returns explicit paths.
//! [`decode_mwpm`] matches directly on the lattice, with every weight-0
//! vertical run collapsed to one vertex, which is much faster for sampling.

mod graph;
mod solver;

pub use graph::{build_defect_graph, Crossing, DefectGraph};

use crate::error::{Error, Result};
use crate::lattice::{BitConfig, SyndromeRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Defect {
    pub row: usize,
    pub edge: usize,
}

impl Defect {
    /// Dual column: 0 is the left chain end, `L` the right one.
    pub fn column(&self) -> usize {
        self.edge + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Partner {
    Defect(usize),
    Boundary(Side),
}

pub fn extract_defects(record: &SyndromeRecord) -> Vec<Defect> {
    let mut defects = Vec::new();
    for edge in 0..record.edges() {
        let mut last = false;
        for row in 0..record.steps() {
            if let Some(s) = record.result(row, edge) {
                if s.is_minus() != last {
                    defects.push(Defect { row, edge });
                }
                last = s.is_minus();
            }
        }
    }
    defects.sort();
    defects
}

/// Pairs of defect indices (or defect and boundary) with one realizing
/// path each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, Partner)>,
    pub paths: Vec<Vec<Crossing>>,
    pub weight: u32,
}

impl Matching {
    /// Flip every qubit crossed an odd number of times.
    pub fn correction(&self, length: usize) -> BitConfig {
        let mut c = BitConfig::zeros(length);
        for crossing in self.paths.iter().flatten() {
            c.flip(crossing.qubit);
        }
        c
    }
}

pub fn min_weight_perfect_matching(graph: &DefectGraph) -> Result<Matching> {
    let n = graph.len();
    // Every defect gets a private boundary vertex. A defect pair whose
    // distance is at least the sum of their boundary distances is never
    // needed, so that edge is dropped.
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, n + i, graph.boundary_weight(i)));
        for j in i + 1..n {
            if graph.weight(i, j) < graph.boundary_weight(i) + graph.boundary_weight(j) {
                edges.push((i, j, graph.weight(i, j)));
            }
        }
    }
    let outcome = solver::blossom(2 * n, &edges, (n..2 * n).collect(), (0..n).collect());

    let mut pairs = Vec::with_capacity(n);
    let mut paths = Vec::with_capacity(n);
    let mut weight = 0;
    let mut covered = vec![false; n];
    for &(a, b) in &outcome.pairs {
        if a >= n || b >= n || covered[a] || covered[b] {
            return Err(Error::Matching(format!("unexpected pair ({a}, {b})")));
        }
        covered[a] = true;
        covered[b] = true;
        pairs.push((a, Partner::Defect(b)));
        paths.push(graph.path_between(a, b));
        weight += graph.weight(a, b);
    }
    for &(a, _) in &outcome.to_virtual {
        if a >= n || covered[a] {
            return Err(Error::Matching(format!("unexpected boundary match for {a}")));
        }
        covered[a] = true;
        let side = graph.nearer_boundary(a);
        pairs.push((a, Partner::Boundary(side)));
        paths.push(graph.path_to_boundary(a, side));
        weight += graph.boundary_weight(a);
    }
    if covered.iter().any(|&c| !c) {
        return Err(Error::Matching("matching left a defect uncovered".into()));
    }
    if u64::from(weight) != outcome.weight {
        return Err(Error::Matching(format!(
            "solver optimum {} disagrees with matched weight {weight}",
            outcome.weight
        )));
    }
    Ok(Matching { pairs, paths, weight })
}

pub fn decode_mwpm(record: &SyndromeRecord) -> BitConfig {
    solver::decode_contracted(record).0
}

/// The correction together with the total weight of the optimal matching.
pub fn decode_mwpm_weighted(record: &SyndromeRecord) -> (BitConfig, u64) {
    solver::decode_contracted(record)
}
