// SPDX-License-Identifier: Apache-2.0

//! Mean time to first failure of every decoder at one point.
//!
//!     cargo run --release --example failure_times -- [p] [q] [L] [samples]

use ptim::{mtff, Decoder, Params};

fn arg<T: std::str::FromStr>(k: usize, default: T) -> T {
    std::env::args().nth(k).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ptim::Result<()> {
    let params = Params::new(arg(1, 0.3), arg(2, 0.3), arg(3, 9), 1, 0)?;
    let samples = arg(4, 300);
    for decoder in Decoder::ALL {
        let r = mtff(decoder, &params, samples, 5_000)?;
        println!("{decoder:<5} {:>9.2} +- {:<7.2} censored {}", r.mean, r.std_err, r.censored);
    }
    Ok(())
}
