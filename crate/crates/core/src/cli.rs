// SPDX-License-Identifier: Apache-2.0

//! Scan drivers behind the `ptim` binary.
//!
//! Every command writes one record per grid point, either as CSV with a
//! header row or as one JSON object per line. Records carry the master
//! seed, the sample count and the crate version. Progress goes to stderr.
//!
//! Sweep columns: `decoder, p, q, length, steps, pd, std_err, samples,
//! seed, version, error`. `pd` and `std_err` are empty when the point
//! failed, and `error` then holds the reason.
//!
//! Mtff columns: `decoder, p, q, length, t_max, mtff, std_err, censored,
//! samples, seed, version, error`.
//!
//! Crosscheck columns: `decoder, p, q, length, steps, quantum,
//! quantum_std_err, classical, classical_std_err, z, pass, samples, seed,
//! version`.
//!
//! Analytic columns: `p, length, steps, analytic, mc_pd, mc_std_err,
//! samples, seed, version`.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Params;
use crate::metrics::{analytic_pd_mwpm_q0, estimate_pd, estimate_pd_common, mtff, Decoder, Estimate};
use crate::sampler::{sample_error_pattern, sample_syndrome_pattern, RngStream};
use crate::stabilizer::{evaluate_fqm, run_quantum};

pub const VERSION: &str = concat!("ptim-", env!("CARGO_PKG_VERSION"));

/// Largest `L = T` the quantum cross-check accepts.
pub const CROSSCHECK_MAX: usize = 9;

/// Offset between the quantum and classical sample sets of a cross-check,
/// so the two sides are independent.
const CLASSICAL_SEED_OFFSET: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            other => Err(Error::InvalidSpec(format!("unknown output format {other:?}"))),
        }
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl LinearGrid {
    pub fn single(value: f64) -> Self {
        LinearGrid { start: value, stop: value, count: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|k| self.start + step * k as f64).collect()
    }
}

impl FromStr for LinearGrid {
    type Err = Error;

    /// `start:stop:count`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidSpec(format!("grid {s:?} is not start:stop:count"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start = parts[0].parse().map_err(|_| bad())?;
        let stop = parts[1].parse().map_err(|_| bad())?;
        let count = parts[2].parse().map_err(|_| bad())?;
        Ok(LinearGrid { start, stop, count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepsRule {
    Fixed(usize),
    EqualToLength,
}

impl StepsRule {
    pub fn steps_for(self, length: usize) -> usize {
        match self {
            StepsRule::Fixed(t) => t,
            StepsRule::EqualToLength => length,
        }
    }
}

impl FromStr for StepsRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "L" {
            return Ok(StepsRule::EqualToLength);
        }
        s.parse()
            .map(StepsRule::Fixed)
            .map_err(|_| Error::InvalidSpec(format!("steps must be an integer or \"L\", got {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub p_grid: LinearGrid,
    /// `None` means `q = p` at every point.
    pub q_grid: Option<LinearGrid>,
    pub lengths: Vec<usize>,
    pub steps: StepsRule,
    pub samples: usize,
    pub decoders: Vec<Decoder>,
    pub seed: u64,
    pub workers: usize,
    pub t_max: usize,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let grids = std::iter::once(&self.p_grid).chain(self.q_grid.as_ref());
        for g in grids {
            if g.count == 0 {
                return Err(Error::InvalidSpec("grids must have at least one point".into()));
            }
        }
        if self.lengths.is_empty() {
            return Err(Error::InvalidSpec("at least one chain length is required".into()));
        }
        if self.samples == 0 || self.workers == 0 || self.t_max == 0 {
            return Err(Error::InvalidSpec("samples, workers and t-max must be at least 1".into()));
        }
        if self.decoders.is_empty() {
            return Err(Error::InvalidSpec("at least one decoder is required".into()));
        }
        for point in self.points() {
            point?;
        }
        Ok(())
    }

    /// Grid points in output order: length, then p, then q.
    pub fn points(&self) -> Vec<Result<Params>> {
        let mut out = Vec::new();
        for &length in &self.lengths {
            for p in self.p_grid.values() {
                let qs = match &self.q_grid {
                    Some(g) => g.values(),
                    None => vec![p],
                };
                for q in qs {
                    let steps = self.steps.steps_for(length);
                    out.push(Params::new(p, q, length, steps, self.seed));
                }
            }
        }
        out
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("cannot start {} workers: {e}", self.workers)))
    }
}

enum RowWriter<'a> {
    Csv(csv::Writer<&'a mut dyn Write>),
    Jsonl(&'a mut dyn Write),
}

impl<'a> RowWriter<'a> {
    fn new(format: OutputFormat, out: &'a mut dyn Write) -> Self {
        match format {
            OutputFormat::Csv => RowWriter::Csv(csv::Writer::from_writer(out)),
            OutputFormat::Jsonl => RowWriter::Jsonl(out),
        }
    }

    fn write<T: Serialize>(&mut self, row: &T) -> Result<()> {
        match self {
            RowWriter::Csv(w) => w.serialize(row)?,
            RowWriter::Jsonl(w) => {
                serde_json::to_writer(&mut *w, row)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<()> {
        match self {
            RowWriter::Csv(mut w) => w.flush()?,
            RowWriter::Jsonl(w) => w.flush()?,
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub decoder: &'static str,
    pub p: f64,
    pub q: f64,
    pub length: usize,
    pub steps: usize,
    pub pd: Option<f64>,
    pub std_err: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub version: &'static str,
    pub error: Option<String>,
}

/// One row per grid point and decoder. All decoders of a point share the
/// same trajectories. A failing point is reported in its row and the scan
/// goes on.
pub fn cmd_sweep(spec: &SweepSpec, out: &mut dyn Write) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let pool = spec.pool()?;
    let mut writer = RowWriter::new(spec.format, out);
    let mut rows = Vec::new();
    let points = spec.points();
    for (i, params) in points.into_iter().enumerate() {
        let params = params?;
        let started = Instant::now();
        let result = pool.install(|| estimate_pd_common(&spec.decoders, &params, spec.samples));
        let estimates: Vec<std::result::Result<Estimate, String>> = match result {
            Ok(ests) => ests.into_iter().map(Ok).collect(),
            Err(e) => {
                // Capacity limits are per decoder; retry the others alone.
                spec.decoders
                    .iter()
                    .map(|&d| pool.install(|| estimate_pd(d, &params, spec.samples)).map_err(|_| e.to_string()))
                    .collect()
            }
        };
        for (&decoder, est) in spec.decoders.iter().zip(estimates) {
            let row = SweepRow {
                decoder: decoder.name(),
                p: params.p(),
                q: params.q(),
                length: params.length(),
                steps: params.steps(),
                pd: est.as_ref().ok().map(|e| e.mean),
                std_err: est.as_ref().ok().map(|e| e.std_err),
                samples: spec.samples,
                seed: spec.seed,
                version: VERSION,
                error: est.err(),
            };
            writer.write(&row)?;
            rows.push(row);
        }
        eprintln!(
            "sweep point {} p={:.4} q={:.4} L={} T={} in {:.2}s",
            i + 1,
            params.p(),
            params.q(),
            params.length(),
            params.steps(),
            started.elapsed().as_secs_f64()
        );
    }
    writer.finish()?;
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct MtffRow {
    pub decoder: &'static str,
    pub p: f64,
    pub q: f64,
    pub length: usize,
    pub t_max: usize,
    pub mtff: Option<f64>,
    pub std_err: Option<f64>,
    pub censored: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub version: &'static str,
    pub error: Option<String>,
}

pub fn cmd_mtff(spec: &SweepSpec, out: &mut dyn Write) -> Result<Vec<MtffRow>> {
    spec.validate()?;
    let pool = spec.pool()?;
    let mut writer = RowWriter::new(spec.format, out);
    let mut rows = Vec::new();
    for params in spec.points() {
        let params = params?;
        for &decoder in &spec.decoders {
            let started = Instant::now();
            let result = pool.install(|| mtff(decoder, &params, spec.samples, spec.t_max));
            let row = MtffRow {
                decoder: decoder.name(),
                p: params.p(),
                q: params.q(),
                length: params.length(),
                t_max: spec.t_max,
                mtff: result.as_ref().ok().map(|r| r.mean),
                std_err: result.as_ref().ok().map(|r| r.std_err),
                censored: result.as_ref().ok().map(|r| r.censored),
                samples: spec.samples,
                seed: spec.seed,
                version: VERSION,
                error: result.err().map(|e| e.to_string()),
            };
            writer.write(&row)?;
            rows.push(row);
            eprintln!(
                "mtff {} p={:.4} q={:.4} L={} in {:.2}s",
                decoder,
                params.p(),
                params.q(),
                params.length(),
                started.elapsed().as_secs_f64()
            );
        }
    }
    writer.finish()?;
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckRow {
    pub decoder: &'static str,
    pub p: f64,
    pub q: f64,
    pub length: usize,
    pub steps: usize,
    pub quantum: f64,
    pub quantum_std_err: f64,
    pub classical: f64,
    pub classical_std_err: f64,
    /// Difference in units of the combined standard error.
    pub z: f64,
    pub pass: bool,
    pub samples: usize,
    pub seed: u64,
    pub version: &'static str,
}

/// Mean of the quantum evaluation over tableau runs next to the mean of
/// the classical evaluation over independent classical trajectories.
pub fn quantum_pd(decoder: Decoder, params: &Params, n: usize) -> Result<Estimate> {
    let values = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = RngStream::trajectory(params.seed(), k);
            let errors = sample_error_pattern(params, &mut rng);
            let pattern = sample_syndrome_pattern(params, &mut rng);
            let run = run_quantum(&errors, &pattern, &mut RngStream::quantum(params.seed(), k))?;
            match decoder {
                Decoder::FullKnowledge => Ok(if run.survived { 1.0 } else { 0.5 }),
                _ => {
                    let mut coins = RngStream::decoder(params.seed(), k);
                    let c = decoder.decode(&run.syndromes, params.p(), &mut coins)?;
                    evaluate_fqm(&run, &c)
                }
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Estimate::from_samples(&values))
}

pub fn cmd_crosscheck(spec: &SweepSpec, out: &mut dyn Write) -> Result<Vec<CrosscheckRow>> {
    spec.validate()?;
    for &length in &spec.lengths {
        let steps = spec.steps.steps_for(length);
        if length > CROSSCHECK_MAX || steps > CROSSCHECK_MAX {
            return Err(Error::SizeCap { length, steps, max: CROSSCHECK_MAX });
        }
    }
    let pool = spec.pool()?;
    let mut writer = RowWriter::new(spec.format, out);
    let mut rows = Vec::new();
    for params in spec.points() {
        let params = params?;
        let classical_params = params.with_seed(params.seed().wrapping_add(CLASSICAL_SEED_OFFSET));
        let classical = pool.install(|| estimate_pd_common(&spec.decoders, &classical_params, spec.samples))?;
        for (&decoder, classical) in spec.decoders.iter().zip(classical) {
            let quantum = pool.install(|| quantum_pd(decoder, &params, spec.samples))?;
            let se = quantum.combined_std_err(&classical);
            let diff = quantum.mean - classical.mean;
            let z = if se > 0.0 { diff / se } else if diff == 0.0 { 0.0 } else { f64::INFINITY };
            let row = CrosscheckRow {
                decoder: decoder.name(),
                p: params.p(),
                q: params.q(),
                length: params.length(),
                steps: params.steps(),
                quantum: quantum.mean,
                quantum_std_err: quantum.std_err,
                classical: classical.mean,
                classical_std_err: classical.std_err,
                z,
                pass: z.abs() <= 4.0,
                samples: spec.samples,
                seed: spec.seed,
                version: VERSION,
            };
            eprintln!(
                "crosscheck {} p={:.3} q={:.3} L={}: quantum {:.4} classical {:.4} z={:.2}",
                row.decoder, row.p, row.q, row.length, row.quantum, row.classical, row.z
            );
            writer.write(&row)?;
            rows.push(row);
        }
    }
    writer.finish()?;
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyticRow {
    pub p: f64,
    pub length: usize,
    pub steps: usize,
    pub analytic: f64,
    pub mc_pd: Option<f64>,
    pub mc_std_err: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub version: &'static str,
}

/// Closed-form matching curve at `q = 0`; with `samples > 0` a Monte Carlo
/// estimate at `q = 0` is added to each row.
pub fn cmd_analytic(
    p_grid: LinearGrid,
    lengths: &[usize],
    steps: StepsRule,
    samples: usize,
    seed: u64,
    workers: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<Vec<AnalyticRow>> {
    if let Some(&even) = lengths.iter().find(|&&l| l % 2 == 0) {
        return Err(Error::InvalidParams(format!("chain length must be odd, got {even}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidSpec(format!("cannot start workers: {e}")))?;
    let mut writer = RowWriter::new(format, out);
    let mut rows = Vec::new();
    for &length in lengths {
        let t = steps.steps_for(length);
        for p in p_grid.values() {
            let analytic = analytic_pd_mwpm_q0(p, length, t)?;
            let mc = if samples > 0 {
                let params = Params::new(p, 0.0, length, t, seed)?;
                Some(pool.install(|| estimate_pd(Decoder::Matching, &params, samples))?)
            } else {
                None
            };
            let row = AnalyticRow {
                p,
                length,
                steps: t,
                analytic,
                mc_pd: mc.map(|e| e.mean),
                mc_std_err: mc.map(|e| e.std_err),
                samples,
                seed,
                version: VERSION,
            };
            writer.write(&row)?;
            rows.push(row);
        }
    }
    writer.finish()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: LinearGrid = "0.28:0.38:11".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], 0.28);
        assert!((v[10] - 0.38).abs() < 1e-12);
        assert_eq!(LinearGrid::single(0.3).values(), vec![0.3]);
        assert!("0.1:0.2".parse::<LinearGrid>().is_err());
        assert_eq!("L".parse::<StepsRule>().unwrap(), StepsRule::EqualToLength);
        assert_eq!("7".parse::<StepsRule>().unwrap(), StepsRule::Fixed(7));
        assert!("x".parse::<StepsRule>().is_err());
    }
}
