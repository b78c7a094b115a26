// SPDX-License-Identifier: Apache-2.0

//! Decoding probability of matching along p = q and the crossing of the
//! curves for different chain lengths.
//!
//!     cargo run --release --example mwpm_threshold -- [samples]

use ptim::cli::LinearGrid;
use ptim::{estimate_pd, threshold_crossing, Curve, Decoder, Params};

fn main() -> ptim::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2_000);
    let grid = LinearGrid { start: 0.26, stop: 0.40, count: 8 }.values();
    let mut curves = Vec::new();
    print!("   p  ");
    for length in [7, 11, 15] {
        print!("      L={length:<3}");
    }
    println!();
    for length in [7, 11, 15] {
        let mut points = Vec::new();
        for &p in &grid {
            points.push((p, estimate_pd(Decoder::Matching, &Params::new(p, p, length, length, 5)?, samples)?));
        }
        curves.push(Curve { length, points });
    }
    for (i, p) in grid.iter().enumerate() {
        print!("{p:.3} ");
        for c in &curves {
            print!("  {:.4}+-{:.4}", c.points[i].1.mean, c.points[i].1.std_err);
        }
        println!();
    }
    match threshold_crossing(&curves) {
        Ok(c) => println!("crossing near p = {:.3} (spread {:.3})", c.estimate, c.spread),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
