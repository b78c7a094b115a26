// SPDX-License-Identifier: Apache-2.0

//! Defect distances on the dual space-time lattice.
//!
//! Lattice nodes are `(row, edge)`. Moving sideways crosses one qubit
//! worldline and costs 1; moving up or down costs 0 but is only possible
//! where the edge went unmeasured. Distances come from a 0-1 breadth-first
//! search with a deque.

use std::collections::VecDeque;

use super::{extract_defects, Defect, Side};
use crate::lattice::SyndromeRecord;

/// One qubit worldline crossed at a given row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub row: usize,
    pub qubit: usize,
}

/// Complete graph over the defects with shortest-path weights, plus the
/// distance from every defect to its nearer boundary.
#[derive(Debug, Clone)]
pub struct DefectGraph {
    length: usize,
    steps: usize,
    defects: Vec<Defect>,
    weights: Vec<u32>,
    boundary: Vec<(u32, Side)>,
    // `open[r * edges + e]`: rows r and r + 1 are linked on edge e.
    open: Vec<bool>,
}

const UNREACHABLE: u32 = u32::MAX;

pub fn build_defect_graph(record: &SyndromeRecord) -> DefectGraph {
    let defects = extract_defects(record);
    let (steps, edges, length) = (record.steps(), record.edges(), record.length());
    let mut open = vec![false; steps * edges];
    for r in 0..steps.saturating_sub(1) {
        for e in 0..edges {
            open[r * edges + e] = record.result(r, e).is_none();
        }
    }
    let mut graph = DefectGraph {
        length,
        steps,
        weights: vec![0; defects.len() * defects.len()],
        boundary: defects.iter().map(|d| boundary_distance(d.edge, length)).collect(),
        defects,
        open,
    };
    for i in 0..graph.defects.len() {
        let (dist, _) = graph.search(graph.defects[i]);
        for j in 0..graph.defects.len() {
            let d = graph.defects[j];
            graph.weights[i * graph.defects.len() + j] = dist[d.row * edges + d.edge];
        }
    }
    graph
}

fn boundary_distance(edge: usize, length: usize) -> (u32, Side) {
    let left = edge + 1;
    let right = length - edge - 1;
    if left <= right {
        (left as u32, Side::Left)
    } else {
        (right as u32, Side::Right)
    }
}

impl DefectGraph {
    pub fn defects(&self) -> &[Defect] {
        &self.defects
    }

    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn weight(&self, a: usize, b: usize) -> u32 {
        self.weights[a * self.defects.len() + b]
    }

    pub fn boundary_weight(&self, a: usize) -> u32 {
        self.boundary[a].0
    }

    pub fn nearer_boundary(&self, a: usize) -> Side {
        self.boundary[a].1
    }

    /// Distance to a specific side, which need not be the nearer one.
    pub fn side_weight(&self, a: usize, side: Side) -> u32 {
        let column = self.defects[a].column();
        match side {
            Side::Left => column as u32,
            Side::Right => (self.length - column) as u32,
        }
    }

    fn edges(&self) -> usize {
        self.length.saturating_sub(1)
    }

    fn search(&self, source: Defect) -> (Vec<u32>, Vec<usize>) {
        let edges = self.edges();
        let n = self.steps * edges;
        let mut dist = vec![UNREACHABLE; n];
        let mut pred = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let start = source.row * edges + source.edge;
        dist[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let (r, e) = (v / edges, v % edges);
            let mut relax = |u: usize, cost: u32, queue: &mut VecDeque<usize>| {
                let d = dist[v] + cost;
                if d < dist[u] {
                    dist[u] = d;
                    pred[u] = v;
                    if cost == 0 {
                        queue.push_front(u);
                    } else {
                        queue.push_back(u);
                    }
                }
            };
            if r + 1 < self.steps && self.open[r * edges + e] {
                relax(v + edges, 0, &mut queue);
            }
            if r > 0 && self.open[(r - 1) * edges + e] {
                relax(v - edges, 0, &mut queue);
            }
            if e + 1 < edges {
                relax(v + 1, 1, &mut queue);
            }
            if e > 0 {
                relax(v - 1, 1, &mut queue);
            }
        }
        (dist, pred)
    }

    /// Qubit crossings along one shortest path from defect `a` to defect `b`.
    pub fn path_between(&self, a: usize, b: usize) -> Vec<Crossing> {
        let edges = self.edges();
        let (_, pred) = self.search(self.defects[a]);
        let target = self.defects[b];
        let start = self.defects[a].row * edges + self.defects[a].edge;
        let mut crossings = Vec::new();
        let mut v = target.row * edges + target.edge;
        while v != start {
            let u = pred[v];
            if u / edges == v / edges {
                // Sideways between edges e and e + 1 crosses qubit e + 1.
                crossings.push(Crossing { row: v / edges, qubit: (u % edges).max(v % edges) });
            }
            v = u;
        }
        crossings.reverse();
        crossings
    }

    /// Straight sideways path from defect `a` to the chosen boundary.
    pub fn path_to_boundary(&self, a: usize, side: Side) -> Vec<Crossing> {
        let d = self.defects[a];
        let qubits: Vec<usize> = match side {
            Side::Left => (0..=d.edge).rev().collect(),
            Side::Right => (d.edge + 1..self.length).collect(),
        };
        qubits.into_iter().map(|qubit| Crossing { row: d.row, qubit }).collect()
    }
}
