//! Register survival probability over seven decades of time.
//!
//! A six-particle register is written into a 12-site section of the
//! chain and left alone. For the plain base sequence the register sits
//! near an interaction-enabled resonance and its survival probability
//! |A(t)|² oscillates away within t ~ 10³/J; with the period-6
//! modification the same register survives beyond 10⁶/J.

use locchain::dynamics::{evolve_amplitude, log_time_grid, Lifetime};
use locchain::sequences::SequenceSpec;
use locchain::single_particle::ChainConfig;

fn main() -> locchain::Result<()> {
    let register = [416, 419, 420, 422, 423, 424];
    let section = (415, 12);
    let alpha = 0.25;

    let mut times = vec![0.0];
    times.extend(log_time_grid(1e-1, 1e6, 120)?);

    for (name, spec) in [
        ("base", SequenceSpec::Base { alpha }),
        (
            "mod6",
            SequenceSpec::Mod6 {
                alpha,
                alpha_prime: 0.22,
            },
        ),
    ] {
        let config = ChainConfig {
            spec,
            n0: section.0,
            length: section.1,
            h_over_j: 20.0,
            delta: 1.0,
        };
        let trace = evolve_amplitude(&config, &register, &times)?;

        println!(
            "{name}: sites {:?} on section [{}, {}], h/J = 20, Delta = 1",
            register,
            section.0,
            section.0 + section.1 - 1
        );
        println!("{:>12} {:>12}", "t [1/J]", "min |A|^2 so far");
        let mut running = f64::INFINITY;
        let mut next_decade = 1.0;
        for (&t, &a) in trace.times.iter().zip(&trace.amp_sq) {
            running = running.min(a);
            if t >= next_decade {
                println!("{next_decade:>12.0e} {running:>12.6}");
                next_decade *= 10.0;
            }
        }
        match trace.first_below(0.9)? {
            Lifetime::Crossed(t) => {
                println!("  |A|^2 first drops below 0.9 at t = {t:.3e}/J");
            }
            Lifetime::ExceedsTMax => {
                println!("  |A|^2 never drops below 0.9 up to t = 1e6/J");
            }
        }
        println!("  worst survival over the whole window: {:.6}", trace.min_amp_sq());
        println!();
    }

    println!("same register, same section, same couplings — only the sequence");
    println!("modification differs. The engineered gap converts a fast two-state");
    println!("oscillation into parts-per-thousand wiggles around full survival.");
    Ok(())
}
