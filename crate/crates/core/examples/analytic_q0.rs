// SPDX-License-Identifier: Apache-2.0

//! Closed-form matching curve at q = 0 next to simulation.
//!
//!     cargo run --release --example analytic_q0 -- [samples]

use ptim::{analytic_pd_mwpm_q0, estimate_pd, Decoder, Params};

fn main() -> ptim::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5_000);
    println!("   p    L   closed form   simulated");
    for length in [5, 11, 21] {
        for k in 1..=9 {
            let p = k as f64 / 10.0;
            let exact = analytic_pd_mwpm_q0(p, length, length)?;
            let mc = estimate_pd(Decoder::Matching, &Params::new(p, 0.0, length, length, 9)?, samples)?;
            println!("{p:.1}  {length:>3}   {exact:.6}      {:.4}+-{:.4}", mc.mean, mc.std_err);
        }
    }
    Ok(())
}
