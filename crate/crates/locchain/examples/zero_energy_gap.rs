//! δε/h spectra of the interaction-enabled pair transitions.
//!
//! Interactions let a pair of particles hop apart and back together,
//! changing the interaction energy by at most 2JΔ while moving at most
//! four site indices. A transition becomes dangerous when its sequence
//! energy mismatch δε approaches zero. This example enumerates all such
//! low-order families, shows that the plain base sequence has exact
//! zeroes (on the n = 6k−1 comb), and that the periodic modifications
//! lift every one of them.

use locchain::resonance_gap::{
    broadband_scan, enumerate_families, min_gap, new_resonance_audit, DEFAULT_N_RANGE,
};
use locchain::sequences::SequenceSpec;

fn main() -> locchain::Result<()> {
    let alpha = 0.25;
    let base = SequenceSpec::Base { alpha };
    let mod6 = SequenceSpec::Mod6 {
        alpha,
        alpha_prime: 0.22,
    };
    let mod3 = SequenceSpec::Mod3 {
        alpha,
        beta: 0.1725,
    };

    let families = enumerate_families(DEFAULT_N_RANGE)?;
    println!(
        "pair-transition instances for anchors n in {:?}: {} kept, {} skipped at the chain start",
        DEFAULT_N_RANGE,
        families.records.len(),
        families.skipped
    );
    println!();

    // the base sequence resonates exactly: pair shifts (n, n+1) -> (n-1, n+2)
    // recur with delta eps = 0 at every n = 6k - 1
    let hits = broadband_scan(&base, 840, 1.5 * alpha.powi(4))?;
    let comb = hits.iter().filter(|h| h.six_k_minus_one).count();
    println!(
        "base sequence: {} pair-shift anchors with delta eps/h below 1.5 alpha^4, {} on the 6k-1 comb",
        hits.len(),
        comb
    );
    let zeroes = hits.iter().filter(|h| h.gap_over_h < 1e-12).count();
    println!("  of these, {zeroes} are exact zeroes -> resonant at any interaction strength");
    println!();

    for (name, spec) in [("mod6", &mod6), ("mod3", &mod3)] {
        let report = min_gap(spec, DEFAULT_N_RANGE)?;
        println!("{name}: min |delta eps|/h = {:.6e}", report.min_gap_over_h);
        println!(
            "  attained at n = {} by ({}, {}) <-> ({}, {}), kappa = {}",
            report.argmin.n,
            report.argmin.k1,
            report.argmin.k2,
            report.argmin.k3,
            report.argmin.k4,
            report.argmin.kappa
        );
        for (class, gap) in &report.min_by_class {
            println!("  smallest {class} gap: {gap:.6e}");
        }
        let audit = new_resonance_audit(spec)?;
        for entry in &audit.entries {
            if !entry.ok {
                println!(
                    "  audit warning: {} = {:.4e} inside the working floor {:.4e}",
                    entry.label, entry.value, entry.floor
                );
            }
        }
        println!();
    }

    println!("the modification amplitude must itself avoid the low-order level");
    println!("spacings; the audit flags mod6's near-coincidence |2 alpha^2 - alpha'/2|,");
    println!("which is why its minimal gap sits just below alpha^3 while mod3 clears it.");
    Ok(())
}
