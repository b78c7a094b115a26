// SPDX-License-Identifier: Apache-2.0

//! Three decoders on one shared set of trajectories.
//!
//!     cargo run --release --example mld_vs_mwpm -- [samples] [L]

use ptim::{estimate_pd_common, Decoder, Params};

fn main() -> ptim::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(1_000);
    let length = args.next().and_then(|s| s.parse().ok()).unwrap_or(9);
    let decoders = [Decoder::MajorityVote, Decoder::Matching, Decoder::MaximumLikelihood];
    println!("L = T = {length}, {samples} trajectories per point");
    println!("  p=q        mvd          mwpm          mld");
    for p in [0.20, 0.25, 0.30, 0.35, 0.40] {
        let est = estimate_pd_common(&decoders, &Params::new(p, p, length, length, 4)?, samples)?;
        let cells: Vec<String> = est.iter().map(|e| format!("{:.4}+-{:.4}", e.mean, e.std_err)).collect();
        println!("{p:.2}  {}", cells.join("  "));
    }
    Ok(())
}
