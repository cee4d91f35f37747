//! Gap degradation under additive sequence errors.
//!
//! Real site energies are never exact. This example layers uniform
//! errors of amplitude D (in units of h) on the period-6 modified
//! sequence and measures R = min δε(errored) / min δε(clean) over many
//! error realizations: how much of the engineered zero-energy gap
//! survives at each error scale.

use locchain::resonance_gap::{gap_ratio, min_gap, DEFAULT_N_RANGE};
use locchain::sequences::SequenceSpec;

fn main() -> locchain::Result<()> {
    let alpha = 0.25;
    let spec = SequenceSpec::Mod6 {
        alpha,
        alpha_prime: 0.22,
    };
    let clean = min_gap(&spec, DEFAULT_N_RANGE)?.min_gap_over_h;
    println!("clean minimal gap: |delta eps|/h = {clean:.6e}");
    println!();

    let seeds: Vec<u64> = (0..20).collect();
    println!(
        "gap retention over {} error realizations, anchors n in {:?}:",
        seeds.len(),
        DEFAULT_N_RANGE
    );
    println!(
        "{:>8} {:>12} {:>8} {:>8} {:>8} {:>8}",
        "D", "D value", "mean R", "std", "min R", "max R"
    );
    for k in [5, 4, 3] {
        let d = alpha.powi(k);
        let stats = gap_ratio(&spec, DEFAULT_N_RANGE, d, &seeds)?;
        let rs: Vec<f64> = stats.per_seed.iter().map(|&(_, r)| r).collect();
        let lo = rs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = rs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "{:>8} {:>12.3e} {:>8.3} {:>8.3} {:>8.3} {:>8.3}",
            format!("alpha^{k}"),
            d,
            stats.mean,
            stats.stddev,
            lo,
            hi
        );
    }
    println!();
    println!("reading: errors at alpha^5 are invisible (R near 1), alpha^4 costs");
    println!("about half the gap, and alpha^3 — the size of the gap itself —");
    println!("destroys it. Site energies must therefore be controlled to the");
    println!("alpha^4 level, about 4e-3 of the band splitting h.");
    Ok(())
}
