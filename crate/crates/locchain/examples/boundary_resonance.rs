//! Locate and characterize the chain-edge resonance.
//!
//! The last site of an open chain has only one neighbour, so its
//! second-order level renormalization is half the bulk value. At one
//! specific α this pushes the edge level onto the level four sites in,
//! and the two hybridize: max I₁ jumps from ≈ 1 to ≈ 2 in a narrow α
//! window. This is a finite-chain effect, absent in the bulk.

use locchain::sequences::SequenceSpec;
use locchain::single_particle::{boundary_resonance_scan, ChainConfig};

fn main() -> locchain::Result<()> {
    let template = ChainConfig {
        spec: SequenceSpec::Base { alpha: 0.1 },
        n0: 1,
        length: 300,
        h_over_j: 20.0,
        delta: 0.0,
    };

    let grid: Vec<f64> = (0..=120).map(|k| 0.06 + 5e-4 * k as f64).collect();
    let resonance = boundary_resonance_scan(&template, &grid, 1.5)?
        .expect("the edge resonance lies inside the scanned window");

    println!("edge-resonance scan on L = {} sites, h/J = 20:", template.length);
    println!();
    println!("{:>8} {:>10}", "alpha", "max I1");
    for (alpha, max_ipr) in resonance
        .scan
        .iter()
        .filter(|(a, _)| (0.07..=0.10).contains(a))
        .step_by(4)
    {
        let marker = if *max_ipr > 1.5 { "  <-- hybridized" } else { "" };
        println!("{alpha:>8.4} {max_ipr:>10.4}{marker}");
    }
    println!();
    println!("peak:   alpha = {:.4}", resonance.peak_alpha);
    println!("        max I1 = {:.3} (two sites sharing one state)", resonance.peak_ipr);
    println!(
        "        carried by sites {} and {} (edge-4 and edge)",
        resonance.pair.0, resonance.pair.1
    );
    println!("        full width in alpha: {:.4}", resonance.width);
    println!();
    println!("bulk sites keep max I1 near 1 at these alphas; only the chain end");
    println!("resonates, and a register placed away from the ends never sees it.");
    Ok(())
}
