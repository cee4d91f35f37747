//! Exact decay-exponent profiles and depth counts.
//!
//! The effective coupling between sites n and n+s carries a factor
//! α^lowdeg(ε_{n+s} − ε_n), so the mean exponent ν(n, m) over a window of
//! m neighbours bounds how fast transition amplitudes decay with
//! distance. Everything here is integer arithmetic — no floats until the
//! final division.

use locchain::number_theory::{
    decay_exponent, h_counts, LowdegProfile, NU_LOWER_ANALYTIC, NU_UPPER_ANALYTIC,
};

fn main() -> locchain::Result<()> {
    println!("decay exponent nu(n, m) = (1/m) sum_s lowdeg(eps_(n+s) - eps_n)");
    println!("{:>4} {:>10} {:>10}", "n", "m = 200", "m = 1000");
    for n in 1..=12 {
        println!(
            "{n:>4} {:>10.4} {:>10.4}",
            decay_exponent(n, 200)?.value(),
            decay_exponent(n, 1000)?.value()
        );
    }
    println!();

    // depth counts: h(i) = #{ s <= m : lowdeg > i }; their sum telescopes
    // to the exponent numerator
    let n = 1;
    let m = 100_000;
    let h = h_counts(n, m, 6)?;
    println!("depth counts at n = {n}, m = {m}:");
    println!("{:>3} {:>10} {:>10} {:>10}", "i", "h(i)", "h(i)/m", "bound");
    let density_bounds = [0.5, 0.25, 1.0 / 6.0, 1.0 / 12.0, 1.0 / 20.0];
    for (i, &hi) in h.iter().enumerate() {
        let bound = density_bounds
            .get(i)
            .map(|b| format!("{b:.4}"))
            .unwrap_or_else(|| "-".into());
        println!("{i:>3} {hi:>10} {:>10.5} {:>10}", hi as f64 / m as f64, bound);
    }
    println!();

    let profile = LowdegProfile::compute(n, m)?;
    println!(
        "profile check: sum_i h(i) = {} = exponent numerator {}",
        profile.h.iter().sum::<u64>(),
        profile.lowdeg_sum
    );
    println!();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for n in 1..=50 {
        let nu = decay_exponent(n, 1000)?.value();
        lo = lo.min(nu);
        hi = hi.max(nu);
    }
    println!("nu over n = 1..50 at m = 1000: [{lo:.4}, {hi:.4}]");
    println!(
        "analytic window for the infinite sequence: [{NU_LOWER_ANALYTIC}, {NU_UPPER_ANALYTIC}]"
    );
    println!("=> amplitudes fall off at least as fast as alpha^(0.89 s) for large s");
    Ok(())
}
