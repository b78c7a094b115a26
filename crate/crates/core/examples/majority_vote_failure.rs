// SPDX-License-Identifier: Apache-2.0

//! A single flip that majority voting loses half the time while matching
//! always recovers it, followed by failure times of both decoders.
//!
//!     cargo run --release --example majority_vote_failure -- [samples]

use ptim::{
    decode_mvd, decode_mwpm, mtff, run_classical, Decoder, FlipPattern, Grid, MajorityVoter, Params, RngStream,
    SyndromePattern,
};

fn main() -> ptim::Result<()> {
    // The last qubit flips in step 1; the unmeasured edge then drifts left.
    let flips = FlipPattern::new(Grid::with_cells(4, 5, &[(0, 4)]));
    let mut measured = Grid::filled(4, 4, true);
    for (row, edge) in [(0, 2), (1, 1), (2, 0)] {
        measured.set(row, edge, false);
    }
    let traj = run_classical(&flips, &SyndromePattern::new(measured)?)?;
    println!("true final configuration {}", traj.final_config());
    println!("matching                 {}", decode_mwpm(&traj.syndromes));
    for k in 0..4 {
        let mut coins = RngStream::decoder(0, k);
        let mut voter = MajorityVoter::new(5);
        let history: Vec<String> = (0..4)
            .map(|r| {
                voter.step(traj.syndromes.row(r), &mut coins);
                voter.tentative().to_string()
            })
            .collect();
        println!("majority vote, coins #{k}  {}", history.join(" -> "));
    }
    let wrong = (0..1000).filter(|&k| &decode_mvd(&traj.syndromes, &mut RngStream::decoder(0, k)) != traj.final_config()).count();
    println!("majority vote wrong in {wrong} of 1000 coin streams\n");

    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    println!("majority vote at p = q = 0.2 ({samples} trajectories each)");
    for length in [11, 41, 161] {
        let r = mtff(Decoder::MajorityVote, &Params::new(0.2, 0.2, length, 1, 1)?, samples, 100_000)?;
        println!("  L={length:>3}  mtff {:>8.1} +- {:.1}", r.mean, r.std_err);
    }
    println!("matching at p = q = 0.28");
    for length in [5, 9, 13] {
        let r = mtff(Decoder::Matching, &Params::new(0.28, 0.28, length, 1, 1)?, samples, 100_000)?;
        println!("  L={length:>3}  mtff {:>8.1} +- {:.1}", r.mean, r.std_err);
    }
    Ok(())
}
