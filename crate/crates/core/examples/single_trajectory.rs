// SPDX-License-Identifier: Apache-2.0

//! Samples one trajectory and shows what each decoder makes of it.
//!
//!     cargo run --example single_trajectory -- [p] [q] [L] [T] [seed]

use ptim::{
    build_defect_graph, decode_mld, decode_mvd, decode_mwpm, evaluate_fbi, min_weight_perfect_matching,
    run_classical, sample_error_pattern, sample_flips_two_stage, sample_syndrome_pattern, Params, Partner,
    RngStream,
};

fn arg<T: std::str::FromStr>(k: usize, default: T) -> T {
    std::env::args().nth(k).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> ptim::Result<()> {
    let params = Params::new(arg(1, 0.25), arg(2, 0.3), arg(3, 9), arg(4, 8), arg(5, 3))?;
    let mut rng = RngStream::trajectory(params.seed(), 0);
    let errors = sample_error_pattern(&params, &mut rng);
    let flips = sample_flips_two_stage(&errors, &mut rng);
    let pattern = sample_syndrome_pattern(&params, &mut rng);
    let traj = run_classical(&flips, &pattern)?;

    // Bits on the left, then the syndrome row: '-' is -1, '+' is +1, '.' unmeasured.
    println!("step  configuration  syndromes");
    for (r, m) in traj.configs.iter().enumerate().skip(1) {
        let row: String = traj.syndromes.row(r - 1)
            .iter()
            .map(|s| match s {
                None => '.',
                Some(s) if s.is_minus() => '-',
                Some(_) => '+',
            })
            .collect();
        println!("{r:>4}  {m}  {row}");
    }

    let graph = build_defect_graph(&traj.syndromes);
    let matching = min_weight_perfect_matching(&graph)?;
    println!("\n{} defects, matching weight {}", graph.len(), matching.weight);
    for &(a, partner) in &matching.pairs {
        let d = graph.defects()[a];
        match partner {
            Partner::Defect(b) => {
                let e = graph.defects()[b];
                println!("  (step {}, edge {}) -- (step {}, edge {})", d.row + 1, d.edge, e.row + 1, e.edge)
            }
            Partner::Boundary(side) => println!("  (step {}, edge {}) -- {side:?} end", d.row + 1, d.edge),
        }
    }

    let mut coins = RngStream::decoder(params.seed(), 0);
    let answers = [
        ("mvd", decode_mvd(&traj.syndromes, &mut coins.clone())),
        ("mwpm", decode_mwpm(&traj.syndromes)),
        ("mld", decode_mld(&traj.syndromes, params.p(), &mut coins)?),
    ];
    println!("\nfinal  {}", traj.final_config());
    for (name, c) in answers {
        println!("{name:<5}  {c}  {}", if evaluate_fbi(&traj, &c)? == 1.0 { "correct" } else { "wrong" });
    }
    Ok(())
}
