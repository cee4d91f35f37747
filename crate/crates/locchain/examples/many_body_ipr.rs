//! Six-particle sector IPR sweeps versus α and interaction strength.
//!
//! Hard-core particles at half filling on a 12-site section: the sector
//! has C(12,6) = 924 Fock states. Interactions let pairs of particles
//! exchange energy, so single-particle localization alone is not enough —
//! the engineered sequence must also keep every interaction-enabled pair
//! transition off-resonant.

use locchain::many_particle::{binomial, sector_ipr_scan, sector_ipr_stats, diagonalize_sector, FockBasis};
use locchain::sequences::SequenceSpec;
use locchain::single_particle::ChainConfig;

fn main() -> locchain::Result<()> {
    let length = 12;
    let particles = 6;
    let template = ChainConfig {
        spec: SequenceSpec::Base { alpha: 0.25 },
        n0: 1,
        length,
        h_over_j: 20.0,
        delta: 1.0,
    };
    println!(
        "sector: {particles} hard-core particles on {length} sites, dimension {}",
        binomial(length, particles)
    );
    println!();

    // free limit: alpha -> 0, no interaction
    let mut free = template.clone();
    free.spec = SequenceSpec::Base { alpha: 1e-6 };
    free.delta = 0.0;
    let basis = FockBasis::build(length, particles)?;
    let spectrum = diagonalize_sector(&free, &basis)?;
    let stats = sector_ipr_stats(&spectrum)?;
    println!(
        "alpha -> 0, Delta = 0: <I_6> = {:.1} (delocalized product states)",
        stats.mean
    );
    println!();

    for delta in [1.0, 2.0] {
        let mut cfg = template.clone();
        cfg.delta = delta;
        let grid: Vec<f64> = (0..=8).map(|k| 0.2 + 0.025 * k as f64).collect();
        println!("h/J = {}, Delta = {delta}:", cfg.h_over_j);
        println!("{:>8} {:>10} {:>10} {:>24}", "alpha", "mean I6", "max I6", "argmax register");
        for point in sector_ipr_scan(&cfg, particles, &grid)? {
            let register: Vec<String> =
                point.argmax_register.iter().map(|s| s.to_string()).collect();
            println!(
                "{:>8.3} {:>10.4} {:>10.4} {:>24}",
                point.alpha,
                point.mean_ipr,
                point.max_ipr,
                register.join(",")
            );
        }
        println!();
    }

    println!("with the sequence in its working window every many-body eigenstate");
    println!("stays a single Fock register dressed by tiny virtual admixtures.");
    Ok(())
}
