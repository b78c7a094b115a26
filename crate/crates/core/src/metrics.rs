// SPDX-License-Identifier: Apache-2.0

//! Decoding probability, mean time to first failure, the closed form at
//! `q = 0`, and threshold crossings.
//!
//! Trajectory `k` always draws from `RngStream::trajectory(seed, k)` and its
//! decoder coins from `RngStream::decoder(seed, k)`. Per-trajectory values
//! are collected in index order before any summation, so results do not
//! depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::lattice::{candidate_strings, check_probability, syndrome_of_config, BitConfig, Outcome, Params, SyndromeRecord};
use crate::matching::decode_mwpm;
use crate::mld::{self, decode_mld, TransferMatrix};
use crate::mvd::{decode_mvd, MajorityVoter};
use crate::sampler::{run_classical, sample_two_stage, RngStream};
use crate::stabilizer::{cluster_survives, ClusterFront};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub count: usize,
}

impl Estimate {
    pub fn from_samples(values: &[f64]) -> Self {
        let n = values.len();
        assert!(n > 0, "an estimate needs at least one sample");
        let mean = values.iter().sum::<f64>() / n as f64;
        let std_err = if n > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Estimate { mean, std_err, count: n }
    }

    /// Standard error of the difference of two independent estimates.
    pub fn combined_std_err(&self, other: &Estimate) -> f64 {
        self.std_err.hypot(other.std_err)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MtffResult {
    pub mean: f64,
    pub std_err: f64,
    pub count: usize,
    /// Trajectories still correct at `t_max`; they count as `t_max`.
    pub censored: usize,
    pub t_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoder {
    FullKnowledge,
    MajorityVote,
    Matching,
    MaximumLikelihood,
}

impl Decoder {
    pub const ALL: [Decoder; 4] =
        [Decoder::FullKnowledge, Decoder::MajorityVote, Decoder::Matching, Decoder::MaximumLikelihood];

    pub fn name(self) -> &'static str {
        match self {
            Decoder::FullKnowledge => "full",
            Decoder::MajorityVote => "mvd",
            Decoder::Matching => "mwpm",
            Decoder::MaximumLikelihood => "mld",
        }
    }

    /// Decoders that only look at the syndrome record.
    pub fn decode(self, record: &SyndromeRecord, p: f64, rng: &mut RngStream) -> Result<BitConfig> {
        match self {
            Decoder::FullKnowledge => Err(Error::InvalidParams(
                "the full-knowledge decoder needs the whole trajectory, not a syndrome record".into(),
            )),
            Decoder::MajorityVote => Ok(decode_mvd(record, rng)),
            Decoder::Matching => Ok(decode_mwpm(record)),
            Decoder::MaximumLikelihood => decode_mld(record, p, rng),
        }
    }

    fn check_capacity(self, length: usize) -> Result<()> {
        if self == Decoder::MaximumLikelihood && length > mld::MAX_LENGTH {
            return Err(Error::Capacity { length, max: mld::MAX_LENGTH });
        }
        Ok(())
    }
}

impl fmt::Display for Decoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Decoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Decoder::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown decoder {s:?}")))
    }
}

pub fn estimate_pd(decoder: Decoder, params: &Params, n: usize) -> Result<Estimate> {
    Ok(estimate_pd_common(&[decoder], params, n)?.remove(0))
}

/// Decodes one shared set of trajectories with every listed decoder.
pub fn estimate_pd_common(decoders: &[Decoder], params: &Params, n: usize) -> Result<Vec<Estimate>> {
    if n == 0 {
        return Err(Error::InvalidParams("sample count must be at least 1".into()));
    }
    for d in decoders {
        d.check_capacity(params.length())?;
    }
    let per_sample = (0..n as u64)
        .into_par_iter()
        .map(|k| sample_values(decoders, params, k))
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok((0..decoders.len())
        .map(|j| Estimate::from_samples(&per_sample.iter().map(|v| v[j]).collect::<Vec<_>>()))
        .collect())
}

fn sample_values(decoders: &[Decoder], params: &Params, k: u64) -> Result<Vec<f64>> {
    let mut rng = RngStream::trajectory(params.seed(), k);
    let (errors, flips, pattern) = sample_two_stage(params, &mut rng);
    let trajectory = run_classical(&flips, &pattern)?;
    let m = trajectory.final_config();
    decoders
        .iter()
        .map(|&d| match d {
            Decoder::FullKnowledge => {
                Ok(if cluster_survives(&errors, &pattern)? { 1.0 } else { 0.5 })
            }
            _ => {
                let mut coins = RngStream::decoder(params.seed(), k);
                let c = d.decode(&trajectory.syndromes, params.p(), &mut coins)?;
                Ok(if &c == m { 1.0 } else { 0.0 })
            }
        })
        .collect()
}

/// Mean first step at which the decoder, given the record truncated there
/// and closed by a complete syndrome row, stops returning the true
/// configuration. `params.steps()` is ignored.
pub fn mtff(decoder: Decoder, params: &Params, n: usize, t_max: usize) -> Result<MtffResult> {
    if n == 0 || t_max == 0 {
        return Err(Error::InvalidParams("sample count and t_max must be at least 1".into()));
    }
    decoder.check_capacity(params.length())?;
    let times = (0..n as u64)
        .into_par_iter()
        .map(|k| first_failure(decoder, params, k, t_max))
        .collect::<Result<Vec<Option<usize>>>>()?;
    let censored = times.iter().filter(|t| t.is_none()).count();
    let values: Vec<f64> = times.iter().map(|t| t.unwrap_or(t_max) as f64).collect();
    let est = Estimate::from_samples(&values);
    Ok(MtffResult { mean: est.mean, std_err: est.std_err, count: n, censored, t_max })
}

/// Decoder state carried from one step to the next.
enum Tracker {
    Full(ClusterFront),
    Vote(MajorityVoter, RngStream),
    Matching(Vec<Option<Outcome>>),
    Likelihood(TransferMatrix),
}

/// First failing step of trajectory `k`, or `None` if it survives `t_max`.
///
/// Each step draws the error row, the flips of the errored sites and the
/// syndrome pattern row, in that order. The majority voter, the forward
/// vector and the cluster front are advanced incrementally; each gives the
/// same answer as decoding the truncated record from scratch.
pub fn first_failure(decoder: Decoder, params: &Params, k: u64, t_max: usize) -> Result<Option<usize>> {
    let length = params.length();
    let edges = length - 1;
    let seed = params.seed();
    let mut rng = RngStream::trajectory(seed, k);
    let mut tracker = match decoder {
        Decoder::FullKnowledge => Tracker::Full(ClusterFront::new(length)),
        Decoder::MajorityVote => Tracker::Vote(MajorityVoter::new(length), RngStream::decoder(seed, k)),
        Decoder::Matching => Tracker::Matching(Vec::new()),
        Decoder::MaximumLikelihood => Tracker::Likelihood(TransferMatrix::new(length, params.p())?),
    };
    let mut m = BitConfig::zeros(length);
    let mut errors = vec![false; length];
    let mut measured = vec![false; edges];
    for t in 1..=t_max {
        for e in errors.iter_mut() {
            *e = rng.bernoulli(params.p());
        }
        for (i, &e) in errors.iter().enumerate() {
            if e && rng.coin() {
                m.flip(i);
            }
        }
        let closing: Vec<Outcome> = if edges > 0 { syndrome_of_config(&m)? } else { Vec::new() };

        let correct = match &tracker {
            Tracker::Full(front) => front.survives_full_row(&errors),
            Tracker::Vote(voter, coins) => {
                let mut voter = voter.clone();
                voter.step_complete(&closing, &mut coins.clone());
                voter.tentative() == &m
            }
            Tracker::Matching(rows) => {
                let mut results = rows.clone();
                results.extend(closing.iter().copied().map(Some));
                let rows: Vec<Vec<Option<Outcome>>> = if edges == 0 {
                    vec![Vec::new(); t]
                } else {
                    results.chunks(edges).map(<[_]>::to_vec).collect()
                };
                let record = SyndromeRecord::from_rows(length, &rows)?;
                decode_mwpm(&record) == m
            }
            Tracker::Likelihood(tm) => {
                let mut tm = tm.clone();
                tm.absorb_complete(&closing);
                let (c, c_bar) = candidate_strings(&closing);
                let (wc, wb) = (tm.weight_of(&c), tm.weight_of(&c_bar));
                mld::choose(c, wc, c_bar, wb, &mut RngStream::decoder(seed, k)) == m
            }
        };
        if !correct {
            return Ok(Some(t));
        }
        if t == t_max {
            break;
        }

        for slot in measured.iter_mut() {
            *slot = !rng.bernoulli(params.q());
        }
        let row: Vec<Option<Outcome>> = (0..edges)
            .map(|e| measured[e].then(|| Outcome::from_bits(m.get(e), m.get(e + 1))))
            .collect();
        match &mut tracker {
            Tracker::Full(front) => front.advance(&errors, &measured),
            Tracker::Vote(voter, coins) => voter.step(&row, coins),
            Tracker::Matching(rows) => rows.extend(row),
            Tracker::Likelihood(tm) => tm.absorb(&row),
        }
    }
    Ok(None)
}

/// Decoding probability of matching at `q = 0`, where it reduces to
/// majority voting over the whole chain in every step. A step goes wrong
/// when more than half the bits flip, and the final answer is right when an
/// even number of steps went wrong.
pub fn analytic_pd_mwpm_q0(p: f64, length: usize, steps: usize) -> Result<f64> {
    check_probability("p", p)?;
    if length == 0 || length % 2 == 0 {
        return Err(Error::InvalidParams(format!("chain length must be odd, got {length}")));
    }
    if steps == 0 {
        return Err(Error::InvalidParams("number of steps must be positive".into()));
    }
    let flip = p / 2.0;
    let step_failure: f64 = (length.div_ceil(2)..=length).map(|b| binomial_pmf(length, b, flip)).sum();
    Ok((0..=steps).step_by(2).map(|t| binomial_pmf(steps, t, step_failure)).sum())
}

/// `C(n, k) x^k (1 - x)^(n - k)`, exact in the coefficient for small `n`.
fn binomial_pmf(n: usize, k: usize, x: f64) -> f64 {
    if n <= 60 {
        let mut coefficient: u64 = 1;
        for j in 0..k.min(n - k) as u64 {
            coefficient = coefficient * (n as u64 - j) / (j + 1);
        }
        coefficient as f64 * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32)
    } else {
        let log = ln_binomial(n as u64, k as u64) + k as f64 * x.ln() + (n - k) as f64 * (1.0 - x).ln();
        if log.is_nan() {
            // 0 * ln(0): the term is 1 when it is the only support point.
            f64::from(u8::from((x == 0.0 && k == 0) || (x == 1.0 && k == n)))
        } else {
            log.exp()
        }
    }
}

/// Decoding-probability curve of one system size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub length: usize,
    pub points: Vec<(f64, Estimate)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    /// Median of the pairwise crossings.
    pub estimate: f64,
    /// Largest minus smallest pairwise crossing.
    pub spread: f64,
    /// `(length_a, length_b, crossing)` for every pair of curves that cross.
    pub pairs: Vec<(usize, usize, f64)>,
}

pub fn threshold_crossing(curves: &[Curve]) -> Result<Crossing> {
    if curves.len() < 2 {
        return Err(Error::InvalidParams("need at least two curves".into()));
    }
    let mut pairs = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            if let Some(x) = pair_crossing(a, b) {
                pairs.push((a.length, b.length, x));
            }
        }
    }
    if pairs.is_empty() {
        return Err(Error::NoCrossing);
    }
    let mut xs: Vec<f64> = pairs.iter().map(|&(_, _, x)| x).collect();
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    let estimate = if xs.len() % 2 == 1 { xs[mid] } else { (xs[mid - 1] + xs[mid]) / 2.0 };
    Ok(Crossing { estimate, spread: xs[xs.len() - 1] - xs[0], pairs })
}

/// Where the difference of two curves changes sign on their shared grid.
/// With several sign changes the steepest one wins.
fn pair_crossing(a: &Curve, b: &Curve) -> Option<f64> {
    let mut diffs: Vec<(f64, f64)> = a
        .points
        .iter()
        .filter_map(|&(p, ea)| {
            b.points
                .iter()
                .find(|(pb, _)| (pb - p).abs() < 1e-9)
                .map(|(_, eb)| (p, ea.mean - eb.mean))
        })
        .filter(|&(_, d)| d != 0.0)
        .collect();
    diffs.sort_by(|x, y| x.0.total_cmp(&y.0));
    diffs
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .max_by(|v, w| (v[0].1 - v[1].1).abs().total_cmp(&(w[0].1 - w[1].1).abs()))
        .map(|w| {
            let ((p0, d0), (p1, d1)) = (w[0], w[1]);
            p0 + (p1 - p0) * d0 / (d0 - d1)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(mean: f64) -> Estimate {
        Estimate { mean, std_err: 0.0, count: 1 }
    }

    #[test]
    fn estimate_statistics() {
        let e = Estimate::from_samples(&[1.0, 0.0, 1.0, 0.0]);
        assert_eq!(e.mean, 0.5);
        assert!((e.std_err - (1.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(Estimate::from_samples(&[0.7]).std_err, 0.0);
    }

    #[test]
    fn decoder_names_round_trip() {
        for d in Decoder::ALL {
            assert_eq!(d.name().parse::<Decoder>().unwrap(), d);
        }
        assert!("blossom".parse::<Decoder>().is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(analytic_pd_mwpm_q0(0.0, 7, 9).unwrap(), 1.0);
        assert_eq!(analytic_pd_mwpm_q0(0.5, 1, 1).unwrap(), 0.75);
        assert_eq!(analytic_pd_mwpm_q0(0.5, 3, 2).unwrap(), 0.736328125);
        assert!(analytic_pd_mwpm_q0(0.5, 4, 2).is_err());
    }

    #[test]
    fn closed_form_large_chain() {
        // Both branches of the binomial helper agree where they overlap.
        for (n, k, x) in [(60, 31, 0.2), (60, 0, 0.3), (60, 60, 0.45)] {
            let small = binomial_pmf(n, k, x);
            let log = (ln_binomial(n as u64, k as u64) + k as f64 * x.ln() + (n - k) as f64 * (1.0 - x).ln()).exp();
            assert!((small - log).abs() <= 1e-12 * small.max(1e-300), "{n} {k} {x}");
        }
        let v = analytic_pd_mwpm_q0(0.3, 101, 101).unwrap();
        assert!(v > 0.999 && v <= 1.0);
    }

    #[test]
    fn crossing_of_lines() {
        let grid = [0.1, 0.2, 0.25, 0.35, 0.4];
        let line = |slope: f64| Curve {
            length: 0,
            points: grid.iter().map(|&p| (p, exact(0.8 + slope * (p - 0.3)))).collect(),
        };
        let mut a = line(-1.0);
        a.length = 11;
        let mut b = line(-3.0);
        b.length = 21;
        let mut c = line(-5.0);
        c.length = 31;
        let x = threshold_crossing(&[a.clone(), b, c]).unwrap();
        assert!((x.estimate - 0.3).abs() < 1e-12);
        assert!(x.spread < 1e-12);
        let mut same = a.clone();
        same.length = 15;
        assert!(matches!(threshold_crossing(&[a, same]), Err(Error::NoCrossing)));
    }

    #[test]
    fn zero_error_rate_is_perfect() {
        let params = Params::new(0.0, 0.4, 5, 5, 3).unwrap();
        for est in estimate_pd_common(&Decoder::ALL, &params, 50).unwrap() {
            assert_eq!(est.mean, 1.0);
        }
        let r = mtff(Decoder::Matching, &params, 10, 25).unwrap();
        assert_eq!((r.mean, r.censored), (25.0, 10));
    }
}
