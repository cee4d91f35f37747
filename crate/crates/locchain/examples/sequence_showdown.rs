//! IPR histograms: the engineered sequence versus uniform disorder.
//!
//! Uniform random energies localize too — but only on average. Across
//! realizations, some eigenstates always land near a resonance and
//! delocalize over several registers. The engineered sequence has no
//! realizations and no such tail: every eigenstate of the one sequence
//! stays at I ≈ 1.

use locchain::many_particle::{ensemble_sector_iprs, histogram};
use locchain::sequences::SequenceSpec;
use locchain::single_particle::ChainConfig;

fn main() -> locchain::Result<()> {
    let length = 12;
    let particles = 6;
    let realizations = 60;

    // random reference: W/J = 26 (energies are W * r with r uniform in (0,1))
    let random = ChainConfig {
        spec: SequenceSpec::Random {
            bandwidth_w: 26.0,
            seed: 0,
        },
        n0: 1,
        length,
        h_over_j: 1.0,
        delta: 1.0,
    };
    // engineered comparison at the same on-site bandwidth: the base
    // spectrum spreads over roughly h/(1-alpha), so h/J = 20 with
    // alpha = 0.274 covers the same 26 J as the disorder above (the
    // alpha is slightly above the infinite-chain value 0.231 because a
    // 12-site window sees only the first few polynomial corrections).
    let engineered = ChainConfig {
        spec: SequenceSpec::Base { alpha: 0.274 },
        n0: 1,
        length,
        h_over_j: 20.0,
        delta: 1.0,
    };

    let edges: Vec<f64> = (0..=60).map(|k| 1.0 + 0.5 * k as f64).collect();
    for (name, cfg, n_real) in [
        ("uniform random, W/J = 26", &random, realizations),
        ("engineered base, h/J = 20", &engineered, 1),
    ] {
        let iprs = ensemble_sector_iprs(cfg, particles, n_real)?;
        let total = iprs.len() as f64;
        let above2 = iprs.iter().filter(|&&i| i > 2.0).count();
        let above5 = iprs.iter().filter(|&&i| i > 5.0).count();
        let worst = iprs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let hist = histogram(&iprs, &edges)?;

        println!("{name} ({n_real} realization(s), {} eigenstates):", iprs.len());
        println!(
            "  I > 2: {above2} ({:.2}%)   I > 5: {above5} ({:.2}%)   worst I = {worst:.2}",
            100.0 * above2 as f64 / total,
            100.0 * above5 as f64 / total
        );
        println!("  distribution (each # is 1% of states):");
        for (w, &d) in hist.bin_edges.windows(2).zip(&hist.density).take(18) {
            let share = d * (w[1] - w[0]);
            let bar = "#".repeat((share * 100.0).round() as usize);
            if share > 0.0005 {
                println!("  [{:>4.1}, {:>4.1})  {bar}", w[0], w[1]);
            }
        }
        if hist.overflow > 0 {
            println!("  ({} states beyond I = {})", hist.overflow, edges.last().unwrap());
        }
        println!();
    }

    println!("the random tail (I > 2) is the point: those states delocalize in");
    println!("every disorder draw, while the engineered spectrum has none at all.");
    Ok(())
}
