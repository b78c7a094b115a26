// SPDX-License-Identifier: Apache-2.0

//! Bond percolation of the initial cluster through the site-time lattice.
//!
//! Vertices are `(t, i)` for `t in 0..=T`. Row 0 is one cluster. A vertical
//! bond enters `(t, i)` unless an error measurement hit site `i` in step `t`;
//! a horizontal bond joins `(t, e)` and `(t, e + 1)` when edge `e` was
//! measured in step `t`.

use crate::error::{Error, Result};
use crate::lattice::{ErrorPattern, SyndromePattern};

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Whether the cluster attached to row 0 still reaches row `T`.
pub fn cluster_survives(errors: &ErrorPattern, pattern: &SyndromePattern) -> Result<bool> {
    let (steps, length) = (errors.steps(), errors.length());
    if pattern.steps() != steps || pattern.length() != length {
        return Err(Error::DimensionMismatch(format!(
            "errors are {steps}x{length}, pattern covers {}x{}",
            pattern.steps(),
            pattern.length()
        )));
    }
    let vertex = |t: usize, i: usize| t * length + i;
    let mut uf = UnionFind::new((steps + 1) * length);
    for i in 1..length {
        uf.union(vertex(0, 0), vertex(0, i));
    }
    for r in 0..steps {
        for i in 0..length {
            if !errors.contains(r, i) {
                uf.union(vertex(r, i), vertex(r + 1, i));
            }
        }
        for e in 0..length - 1 {
            if pattern.measured(r, e) {
                uf.union(vertex(r + 1, e), vertex(r + 1, e + 1));
            }
        }
    }
    let root = uf.find(vertex(0, 0));
    Ok((0..length).any(|i| uf.find(vertex(steps, i)) == root))
}

/// Component labels of the newest vertex row, advanced one step at a time.
/// Label `L` marks the cluster of row 0.
#[derive(Debug, Clone)]
pub(crate) struct ClusterFront {
    labels: Vec<usize>,
}

impl ClusterFront {
    pub(crate) fn new(length: usize) -> Self {
        ClusterFront { labels: vec![length; length] }
    }

    fn root(&self) -> usize {
        self.labels.len()
    }

    /// Survival if the next step had errors `errors` and measured every edge.
    pub(crate) fn survives_full_row(&self, errors: &[bool]) -> bool {
        let root = self.root();
        errors.iter().zip(&self.labels).any(|(&err, &label)| !err && label == root)
    }

    #[cfg(test)]
    pub(crate) fn is_alive(&self) -> bool {
        self.labels.contains(&self.root())
    }

    pub(crate) fn advance(&mut self, errors: &[bool], measured: &[bool]) {
        let l = self.labels.len();
        // Nodes 0..l are the new row, l..=2l the previous labels.
        let mut uf = UnionFind::new(2 * l + 1);
        for (i, (&err, &label)) in errors.iter().zip(&self.labels).enumerate() {
            if !err {
                uf.union(i, l + label);
            }
        }
        for (e, &m) in measured.iter().enumerate() {
            if m {
                uf.union(e, e + 1);
            }
        }
        let root = uf.find(2 * l);
        for i in 0..l {
            let r = uf.find(i);
            self.labels[i] = if r == root { l } else { first_member(&mut uf, r, l) };
        }
    }
}

fn first_member(uf: &mut UnionFind, rep: usize, l: usize) -> usize {
    (0..l).find(|&j| uf.find(j) == rep).expect("representative has a member")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Grid;

    #[test]
    fn no_errors_always_survive() {
        let errors = ErrorPattern::new(Grid::filled(4, 5, false));
        let mut grid = Grid::filled(4, 4, false);
        for e in 0..4 {
            grid.set(3, e, true);
        }
        assert!(cluster_survives(&errors, &SyndromePattern::new(grid).unwrap()).unwrap());
    }

    #[test]
    fn full_error_row_without_measurements_cuts() {
        let errors = ErrorPattern::new(Grid::with_cells(3, 3, &[(0, 0), (0, 1), (0, 2)]));
        let pattern = SyndromePattern::new(Grid::with_cells(3, 2, &[(2, 0), (2, 1)])).unwrap();
        assert!(!cluster_survives(&errors, &pattern).unwrap());
    }

    #[test]
    fn measured_row_does_not_rescue_a_cut() {
        // A full error row severs every vertical bond regardless of
        // horizontal bonds in that row.
        let errors = ErrorPattern::new(Grid::with_cells(2, 3, &[(1, 0), (1, 1), (1, 2)]));
        assert!(!cluster_survives(&errors, &SyndromePattern::full(2, 3)).unwrap());
    }

    #[test]
    fn measured_edges_reconnect_cut_sites() {
        // Every step cuts one site; a measured edge in the same step hands
        // the cluster across.
        let errors = ErrorPattern::new(Grid::with_cells(3, 2, &[(0, 1), (1, 0), (2, 1)]));
        assert!(cluster_survives(&errors, &SyndromePattern::full(3, 2)).unwrap());
        let sparse = SyndromePattern::new(Grid::with_cells(3, 1, &[(2, 0)])).unwrap();
        assert!(!cluster_survives(&errors, &sparse).unwrap());
    }

    #[test]
    fn front_matches_full_graph() {
        use crate::sampler::{sample_error_pattern, sample_syndrome_pattern, RngStream};
        let params = crate::lattice::Params::new(0.5, 0.5, 7, 9, 0).unwrap();
        for k in 0..300 {
            let mut rng = RngStream::trajectory(17, k);
            let errors = sample_error_pattern(&params, &mut rng);
            let pattern = sample_syndrome_pattern(&params, &mut rng);
            let mut front = ClusterFront::new(7);
            for r in 0..9 {
                front.advance(errors.grid().row(r), pattern.grid().row(r));
            }
            assert_eq!(front.is_alive(), cluster_survives(&errors, &pattern).unwrap());
        }
    }
}
