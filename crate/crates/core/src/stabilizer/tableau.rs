// SPDX-License-Identifier: Apache-2.0

//! Stabilizer tableau restricted to what the model needs: single-qubit `X`
//! and two-qubit `ZZ` projective measurements on at most 64 qubits.

use crate::lattice::Outcome;
use crate::sampler::RngStream;

pub const MAX_QUBITS: usize = 64;

/// `i^phase · X^x · Z^z`, one bit per qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pauli {
    pub x: u64,
    pub z: u64,
    pub phase: u8,
}

impl Pauli {
    pub fn identity() -> Self {
        Pauli { x: 0, z: 0, phase: 0 }
    }

    pub fn x(qubit: usize) -> Self {
        Pauli { x: 1 << qubit, z: 0, phase: 0 }
    }

    pub fn z(qubit: usize) -> Self {
        Pauli { x: 0, z: 1 << qubit, phase: 0 }
    }

    pub fn zz(a: usize, b: usize) -> Self {
        Pauli { x: 0, z: (1 << a) | (1 << b), phase: 0 }
    }

    pub fn negated(self) -> Self {
        Pauli { phase: (self.phase + 2) % 4, ..self }
    }

    pub fn commutes_with(&self, other: &Pauli) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// `self · other`, moving every `Z` of `self` past the `X`s of `other`.
    pub fn mul(&self, other: &Pauli) -> Pauli {
        let swaps = (self.z & other.x).count_ones() as u8 % 2;
        Pauli {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: (self.phase + other.phase + 2 * swaps) % 4,
        }
    }
}

/// Generators of the stabilizer group of a pure state on `n` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    gens: Vec<Pauli>,
}

impl Tableau {
    /// The all-zeros state, stabilized by every `Z_i`.
    pub fn zero_state(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "tableau supports at most {MAX_QUBITS} qubits");
        Tableau { n, gens: (0..n).map(Pauli::z).collect() }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Pauli] {
        &self.gens
    }

    /// The outcome of measuring `op` if it is certain, `None` if it would be
    /// a fair coin.
    pub fn expectation(&self, op: &Pauli) -> Option<Outcome> {
        if self.gens.iter().any(|g| !g.commutes_with(op)) {
            return None;
        }
        let product = self.group_element(op)?;
        match (op.phase + 4 - product.phase) % 4 {
            0 => Some(Outcome::Plus),
            2 => Some(Outcome::Minus),
            _ => unreachable!("hermitian operators have real eigenvalues"),
        }
    }

    /// Projects onto an eigenspace of `op` and returns the outcome.
    /// Certain outcomes consume no randomness.
    pub fn measure(&mut self, op: &Pauli, rng: &mut RngStream) -> Outcome {
        let Some(k) = self.gens.iter().position(|g| !g.commutes_with(op)) else {
            return self.expectation(op).expect("commuting operator lies in the group");
        };
        let pivot = self.gens[k];
        for j in k + 1..self.gens.len() {
            if !self.gens[j].commutes_with(op) {
                self.gens[j] = self.gens[j].mul(&pivot);
            }
        }
        let outcome = if rng.coin() { Outcome::Minus } else { Outcome::Plus };
        self.gens[k] = match outcome {
            Outcome::Plus => *op,
            Outcome::Minus => op.negated(),
        };
        outcome
    }

    /// The product of generators whose `X`/`Z` support equals that of
    /// `target`, if one exists.
    fn group_element(&self, target: &Pauli) -> Option<Pauli> {
        // Rows carry the support of a combination of generators plus the
        // mask of generators used; eliminate over the 2n support bits.
        let mut rows: Vec<(u64, u64, u64)> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.x, g.z, 1u64 << i))
            .collect();
        let (mut tx, mut tz, mut used) = (target.x, target.z, 0u64);
        let mut next = 0;
        for bit in 0..2 * self.n {
            let test = |r: &(u64, u64, u64)| {
                if bit < self.n {
                    r.0 >> bit & 1 == 1
                } else {
                    r.1 >> (bit - self.n) & 1 == 1
                }
            };
            let Some(p) = (next..rows.len()).find(|&i| test(&rows[i])) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && test(row) {
                    row.0 ^= pivot.0;
                    row.1 ^= pivot.1;
                    row.2 ^= pivot.2;
                }
            }
            if test(&(tx, tz, 0)) {
                tx ^= pivot.0;
                tz ^= pivot.1;
                used ^= pivot.2;
            }
            next += 1;
        }
        if tx != 0 || tz != 0 {
            return None;
        }
        Some(
            (0..self.gens.len())
                .filter(|&i| used >> i & 1 == 1)
                .fold(Pauli::identity(), |acc, i| acc.mul(&self.gens[i])),
        )
    }

    /// Generators pairwise commute and are independent.
    pub fn is_valid(&self) -> bool {
        let commuting = self
            .gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.commutes_with(b)));
        commuting && self.rank() == self.gens.len() && self.gens.len() == self.n
    }

    fn rank(&self) -> usize {
        let mut rows: Vec<u128> = self
            .gens
            .iter()
            .map(|g| u128::from(g.x) | u128::from(g.z) << 64)
            .collect();
        let mut rank = 0;
        for bit in 0..128 {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for row in rows.iter_mut().skip(rank + 1) {
                if *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        // XZ = -ZX, so X0 Z0 and Z0 X0 differ by a sign.
        let xz = Pauli::x(0).mul(&Pauli::z(0));
        let zx = Pauli::z(0).mul(&Pauli::x(0));
        assert_eq!(xz.x, zx.x);
        assert_eq!(xz.z, zx.z);
        assert_eq!((xz.phase + 2) % 4, zx.phase);
        assert!(!Pauli::x(0).commutes_with(&Pauli::z(0)));
        assert!(Pauli::x(0).commutes_with(&Pauli::z(1)));
        assert!(Pauli::zz(0, 1).commutes_with(&Pauli::x(0).mul(&Pauli::x(1))));
        assert_eq!(Pauli::zz(0, 1).mul(&Pauli::zz(0, 1)), Pauli::identity());
    }

    #[test]
    fn zero_state_outcomes_are_certain() {
        let t = Tableau::zero_state(4);
        assert_eq!(t.expectation(&Pauli::z(2)), Some(Outcome::Plus));
        assert_eq!(t.expectation(&Pauli::zz(1, 2)), Some(Outcome::Plus));
        assert_eq!(t.expectation(&Pauli::z(2).negated()), Some(Outcome::Minus));
        assert_eq!(t.expectation(&Pauli::x(0)), None);
    }

    #[test]
    fn x_x_then_zz_gives_bell_pair() {
        let mut rng = RngStream::quantum(9, 0);
        let mut t = Tableau::zero_state(2);
        let a = t.measure(&Pauli::x(0), &mut rng);
        assert_eq!(t.measure(&Pauli::x(0), &mut rng), a);
        t.measure(&Pauli::x(1), &mut rng);
        t.measure(&Pauli::zz(0, 1), &mut rng);
        assert!(t.is_valid());
        assert_eq!(t.expectation(&Pauli::z(0)), None);
        let xx = Pauli::x(0).mul(&Pauli::x(1));
        assert!(t.expectation(&xx).is_some());
    }

    #[test]
    fn repeated_measurement_is_stable() {
        let mut rng = RngStream::quantum(2, 5);
        let mut t = Tableau::zero_state(5);
        for i in 0..5 {
            t.measure(&Pauli::x(i), &mut rng);
        }
        for e in 0..4 {
            let first = t.measure(&Pauli::zz(e, e + 1), &mut rng);
            assert_eq!(t.expectation(&Pauli::zz(e, e + 1)), Some(first));
            assert!(t.is_valid());
        }
    }
}
