// SPDX-License-Identifier: Apache-2.0

//! Space-time lattice types shared by the sampler and every decoder.
//!
//! Indexing is zero-based throughout: sites `0..L`, edges `0..L-1` (edge `e`
//! joins sites `e` and `e + 1`), and grid row `r` holds what happens in time
//! step `r + 1`. The configuration before the first step is all zeros. Within
//! a step, error measurements (bit flips) happen first and syndrome
//! measurements second; the last step always measures every edge.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters of one simulation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    p: f64,
    q: f64,
    length: usize,
    steps: usize,
    seed: u64,
}

impl Params {
    /// `p` is the error-measurement rate per site and step, `q` the rate at
    /// which a stabilizer is *not* measured. `length` must be odd.
    pub fn new(p: f64, q: f64, length: usize, steps: usize, seed: u64) -> Result<Self> {
        check_probability("p", p)?;
        check_probability("q", q)?;
        if length == 0 || length % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "chain length must be odd and positive, got {length}"
            )));
        }
        if steps == 0 {
            return Err(Error::InvalidParams("number of steps must be positive".into()));
        }
        Ok(Params { p, q, length, steps, seed })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Probability that a bit flips in one step of the classical process.
    pub fn flip_probability(&self) -> f64 {
        self.p / 2.0
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidParams("number of steps must be positive".into()));
        }
        self.steps = steps;
        Ok(self)
    }
}

pub(crate) fn check_probability(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must lie in [0, 1], got {value}")))
    }
}

/// A classical bit configuration, one bit per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitConfig(Vec<bool>);

impl BitConfig {
    pub fn zeros(length: usize) -> Self {
        BitConfig(vec![false; length])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitConfig(bits)
    }

    /// Bit `i` of `index` becomes site `i`.
    pub fn from_index(index: usize, length: usize) -> Self {
        BitConfig((0..length).map(|i| (index >> i) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, site: usize) -> bool {
        self.0[site]
    }

    pub fn set(&mut self, site: usize, value: bool) {
        self.0[site] = value;
    }

    pub fn flip(&mut self, site: usize) {
        self.0[site] = !self.0[site];
    }

    pub fn complement(&self) -> Self {
        BitConfig(self.0.iter().map(|b| !b).collect())
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Number of sites where the two configurations differ.
    pub fn distance(&self, other: &BitConfig) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for BitConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParams(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitConfig)
    }
}

/// Dense row-major boolean grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl Grid {
    pub fn filled(rows: usize, cols: usize, value: bool) -> Self {
        Grid { rows, cols, cells: vec![value; rows * cols] }
    }

    /// Grid with exactly the listed `(row, col)` cells set.
    pub fn with_cells(rows: usize, cols: usize, set: &[(usize, usize)]) -> Self {
        let mut grid = Grid::filled(rows, cols, false);
        for &(r, c) in set {
            grid.set(r, c, true);
        }
        grid
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        self.cells[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        debug_assert!(row < self.rows && col < self.cols);
        self.cells[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_subset_of(&self, other: &Grid) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.cells.iter().zip(&other.cells).all(|(&a, &b)| !a || b)
    }

    pub(crate) fn push_row(&mut self, row: &[bool]) {
        debug_assert_eq!(row.len(), self.cols);
        self.cells.extend_from_slice(row);
        self.rows += 1;
    }
}

/// Where and when the environment measured `σ^x` (T rows × L sites).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorPattern(Grid);

impl ErrorPattern {
    pub fn new(grid: Grid) -> Self {
        ErrorPattern(grid)
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }

    pub fn steps(&self) -> usize {
        self.0.rows()
    }

    pub fn length(&self) -> usize {
        self.0.cols()
    }

    pub fn contains(&self, row: usize, site: usize) -> bool {
        self.0.get(row, site)
    }
}

/// Where and when a classical bit flipped (T rows × L sites).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipPattern(Grid);

impl FlipPattern {
    pub fn new(grid: Grid) -> Self {
        FlipPattern(grid)
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }

    pub fn steps(&self) -> usize {
        self.0.rows()
    }

    pub fn length(&self) -> usize {
        self.0.cols()
    }

    pub fn contains(&self, row: usize, site: usize) -> bool {
        self.0.get(row, site)
    }
}

/// Which stabilizers were measured when (T rows × L-1 edges). The last row
/// is always complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromePattern(Grid);

impl SyndromePattern {
    pub fn new(grid: Grid) -> Result<Self> {
        if grid.rows() == 0 {
            return Err(Error::DimensionMismatch("syndrome pattern needs at least one row".into()));
        }
        if !grid.row(grid.rows() - 1).iter().all(|&m| m) {
            return Err(Error::InvalidParams(
                "the final row of a syndrome pattern must measure every edge".into(),
            ));
        }
        Ok(SyndromePattern(grid))
    }

    pub fn full(steps: usize, length: usize) -> Self {
        SyndromePattern(Grid::filled(steps, length.saturating_sub(1), true))
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }

    pub fn steps(&self) -> usize {
        self.0.rows()
    }

    pub fn edges(&self) -> usize {
        self.0.cols()
    }

    pub fn length(&self) -> usize {
        self.0.cols() + 1
    }

    pub fn measured(&self, row: usize, edge: usize) -> bool {
        self.0.get(row, edge)
    }
}

/// Result of a `σ^z σ^z` stabilizer measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    /// `Minus` when the two bits differ.
    pub fn from_bits(a: bool, b: bool) -> Self {
        if a == b {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Outcome::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+1",
            Outcome::Minus => "-1",
        })
    }
}

/// The syndrome data a decoder sees: the measurement pattern and the
/// results at measured cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeRecord {
    pattern: SyndromePattern,
    results: Vec<Option<Outcome>>,
}

impl SyndromeRecord {
    pub fn new(pattern: SyndromePattern, results: Vec<Option<Outcome>>) -> Result<Self> {
        let grid = pattern.grid();
        if results.len() != grid.rows() * grid.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} results for a {}x{} pattern",
                results.len(),
                grid.rows(),
                grid.cols()
            )));
        }
        for r in 0..grid.rows() {
            for e in 0..grid.cols() {
                if grid.get(r, e) != results[r * grid.cols() + e].is_some() {
                    return Err(Error::InvalidParams(format!(
                        "result presence disagrees with the pattern at row {r}, edge {e}"
                    )));
                }
            }
        }
        Ok(SyndromeRecord { pattern, results })
    }

    /// Builds a record from per-row results; the pattern is read off the
    /// presence of each entry.
    pub fn from_rows(length: usize, rows: &[Vec<Option<Outcome>>]) -> Result<Self> {
        let edges = length.saturating_sub(1);
        let mut grid = Grid::filled(0, edges, false);
        let mut results = Vec::with_capacity(rows.len() * edges);
        for row in rows {
            if row.len() != edges {
                return Err(Error::DimensionMismatch(format!(
                    "row of {} results for {edges} edges",
                    row.len()
                )));
            }
            let present: Vec<bool> = row.iter().map(Option::is_some).collect();
            grid.push_row(&present);
            results.extend_from_slice(row);
        }
        SyndromeRecord::new(SyndromePattern::new(grid)?, results)
    }

    pub fn pattern(&self) -> &SyndromePattern {
        &self.pattern
    }

    pub fn steps(&self) -> usize {
        self.pattern.steps()
    }

    pub fn edges(&self) -> usize {
        self.pattern.edges()
    }

    pub fn length(&self) -> usize {
        self.pattern.length()
    }

    pub fn result(&self, row: usize, edge: usize) -> Option<Outcome> {
        self.results[row * self.edges() + edge]
    }

    pub fn row(&self, row: usize) -> &[Option<Outcome>] {
        let e = self.edges();
        &self.results[row * e..(row + 1) * e]
    }

    pub fn final_row(&self) -> Vec<Outcome> {
        self.row(self.steps() - 1)
            .iter()
            .map(|r| r.expect("final row is fully measured"))
            .collect()
    }

    /// Whether `config` produces every recorded result of the final row.
    pub fn is_candidate(&self, config: &BitConfig) -> bool {
        config.len() == self.length()
            && self
                .final_row()
                .iter()
                .enumerate()
                .all(|(e, &s)| Outcome::from_bits(config.get(e), config.get(e + 1)) == s)
    }
}

/// Syndrome of a configuration: entry `e` is `Plus` iff sites `e` and `e + 1`
/// agree.
pub fn syndrome_of_config(config: &BitConfig) -> Result<Vec<Outcome>> {
    if config.len() < 2 {
        return Err(Error::NoEdges(config.len()));
    }
    Ok(config
        .bits()
        .windows(2)
        .map(|w| Outcome::from_bits(w[0], w[1]))
        .collect())
}

/// The two configurations consistent with a complete syndrome row; the first
/// one has site 0 equal to 0, the second is its complement.
pub fn candidate_strings(final_syndrome: &[Outcome]) -> (BitConfig, BitConfig) {
    let mut bits = Vec::with_capacity(final_syndrome.len() + 1);
    let mut current = false;
    bits.push(current);
    for s in final_syndrome {
        current ^= s.is_minus();
        bits.push(current);
    }
    let c = BitConfig(bits);
    let c_bar = c.complement();
    (c, c_bar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Outcome::{Minus as M, Plus as P};

    fn cfg(s: &str) -> BitConfig {
        s.parse().unwrap()
    }

    #[test]
    fn syndrome_examples() {
        assert_eq!(syndrome_of_config(&cfg("00000")).unwrap(), vec![P, P, P, P]);
        assert_eq!(syndrome_of_config(&cfg("00100")).unwrap(), vec![P, M, M, P]);
        assert_eq!(syndrome_of_config(&cfg("111")).unwrap(), vec![P, P]);
    }

    #[test]
    fn syndrome_needs_an_edge() {
        assert!(matches!(syndrome_of_config(&cfg("1")), Err(Error::NoEdges(1))));
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(candidate_strings(&[P, P]), (cfg("000"), cfg("111")));
        assert_eq!(candidate_strings(&[M, P]), (cfg("011"), cfg("100")));
        assert_eq!(candidate_strings(&[M, M]), (cfg("010"), cfg("101")));
        assert_eq!(candidate_strings(&[]), (cfg("0"), cfg("1")));
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(0.2, 0.3, 5, 5, 0).is_ok());
        assert!(Params::new(-0.1, 0.3, 5, 5, 0).is_err());
        assert!(Params::new(0.1, 1.3, 5, 5, 0).is_err());
        assert!(Params::new(0.1, 0.3, 4, 5, 0).is_err());
        assert!(Params::new(0.1, 0.3, 0, 5, 0).is_err());
        assert!(Params::new(0.1, 0.3, 5, 0, 0).is_err());
        assert_eq!(Params::new(0.4, 0.0, 3, 1, 0).unwrap().flip_probability(), 0.2);
    }

    #[test]
    fn syndrome_pattern_requires_full_final_row() {
        let mut grid = Grid::filled(3, 4, true);
        assert!(SyndromePattern::new(grid.clone()).is_ok());
        grid.set(2, 1, false);
        assert!(SyndromePattern::new(grid.clone()).is_err());
        grid.set(2, 1, true);
        grid.set(0, 1, false);
        assert!(SyndromePattern::new(grid).is_ok());
        let full = SyndromePattern::full(4, 5);
        assert!(full.grid().row(3).iter().all(|&m| m));
    }

    #[test]
    fn record_presence_must_match_pattern() {
        let pattern = SyndromePattern::new(Grid::with_cells(2, 2, &[(1, 0), (1, 1)])).unwrap();
        let ok = vec![None, None, Some(P), Some(M)];
        assert!(SyndromeRecord::new(pattern.clone(), ok).is_ok());
        let bad = vec![Some(P), None, Some(P), Some(M)];
        assert!(SyndromeRecord::new(pattern.clone(), bad).is_err());
        assert!(SyndromeRecord::new(pattern, vec![None; 3]).is_err());
    }

    #[test]
    fn index_round_trip() {
        let c = cfg("10110");
        assert_eq!(c.to_index(), 0b01101);
        assert_eq!(BitConfig::from_index(c.to_index(), 5), c);
    }
}
