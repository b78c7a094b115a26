// SPDX-License-Identifier: Apache-2.0

//! Stabilizer-tableau runs against the classical sampler on a small chain.
//!
//!     cargo run --release --example quantum_crosscheck -- [samples]

use ptim::cli::{cmd_crosscheck, LinearGrid, OutputFormat, StepsRule, SweepSpec};
use ptim::Decoder;

fn main() -> ptim::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4_000);
    let spec = SweepSpec {
        p_grid: LinearGrid { start: 0.2, stop: 0.8, count: 3 },
        q_grid: Some(LinearGrid { start: 0.2, stop: 0.8, count: 3 }),
        lengths: vec![5],
        steps: StepsRule::EqualToLength,
        samples,
        decoders: vec![Decoder::FullKnowledge, Decoder::MajorityVote, Decoder::Matching],
        seed: 12,
        workers: 1,
        t_max: 1,
        format: OutputFormat::Csv,
    };
    let rows = cmd_crosscheck(&spec, &mut std::io::stdout())?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    eprintln!("{} points, {failed} outside 4 standard errors", rows.len());
    Ok(())
}
