// SPDX-License-Identifier: Apache-2.0

//! Decoding probability with full knowledge of the trajectory over the
//! (p, q) square. It drops to one half where the initial cluster stops
//! percolating through space-time.
//!
//!     cargo run --release --example full_knowledge_map -- [samples] [L]

use ptim::{estimate_pd, Decoder, Params};

fn main() -> ptim::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(300);
    let length = args.next().and_then(|s| s.parse().ok()).unwrap_or(21);
    println!("rows: q from 1 down to 0; columns: p from 0 to 1");
    for j in (0..=10).rev() {
        let q = j as f64 / 10.0;
        let cells = (0..=10)
            .map(|i| {
                let params = Params::new(i as f64 / 10.0, q, length, length, 7)?;
                Ok(format!("{:.2}", estimate_pd(Decoder::FullKnowledge, &params, samples)?.mean))
            })
            .collect::<ptim::Result<Vec<_>>>()?;
        println!("q={q:.1}  {}", cells.join(" "));
    }
    Ok(())
}
