//! Engineered on-site energy sequences ε_n/h for a two-band 1D chain.
//!
//! The base sequence places site n (n ≥ 1) at
//!
//! ```text
//! ε_n / h = (1/2) [ (-1)^n  -  Σ_{k=2}^{n+1} (-1)^⌊n/k⌋ α^(k-1) ],   0 < α < 1,
//! ```
//!
//! i.e. a main two-band splitting ±h/2 dressed by corrections whose k-th
//! order carries a sign that flips each time n crosses a multiple of k.
//! The point of the construction: the α-expansions of any two sites first
//! disagree at a low order that is *controlled* (small on average, never
//! large), so all pairwise energy differences stay comparable to powers of
//! α·h with slowly growing exponents. That keeps every hopping process
//! off-resonant at once.
//!
//! Stored values are dimensionless (ε_n/h). The [`Random`] reference
//! sequence is the exception to the h-unit convention: its bandwidth W is
//! measured in units of the hopping J, so for that variant `energy` returns
//! ε_n/J and chain builders require h/J = 1.
//!
//! [`Random`]: SequenceSpec::Random

use crate::error::{Error, Result};
use serde::Serialize;

/// Golden-ratio increment used by the splitmix64 mixer.
const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer: a bijective avalanche mix of a 64-bit word.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based uniform draw on the open interval (0, 1) for site `n`.
///
/// Each site reads an independent stream position, so values do not depend
/// on evaluation order and are bit-identical across runs and platforms.
pub fn unit_open01(seed: u64, n: u64) -> f64 {
    let word = mix64(seed.wrapping_add(GOLDEN.wrapping_mul(n.wrapping_add(1))));
    let u = (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    if u == 0.0 {
        1.0 / (1u64 << 53) as f64
    } else {
        u
    }
}

/// Counter-based uniform draw on the open interval (-1, 1) for site `n`.
pub fn sym_open11(seed: u64, n: u64) -> f64 {
    2.0 * unit_open01(seed ^ 0x5bf0_3635_dead_beef, n) - 1.0
}

/// Derive the seed for realization `i` of an ensemble from a base seed.
pub fn derive_seed(base_seed: u64, i: u64) -> u64 {
    mix64(mix64(base_seed.wrapping_add(GOLDEN)) ^ i.wrapping_mul(GOLDEN).wrapping_add(1))
}

/// On-site energy sequence selector with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// The base polynomial sequence in α.
    Base { alpha: f64 },
    /// Base sequence shifted up by α′/2 (in units of h) at every n = 6k.
    /// Opens a gap at the zero-energy pair resonances that cluster on the
    /// n = 6k - 1 bonds.
    Mod6 { alpha: f64, alpha_prime: f64 },
    /// Base sequence shifted at every n = 3k: up by β/2 for odd k, down by
    /// β for even k (units of h). Alternative gap-opening modification.
    Mod3 { alpha: f64, beta: f64 },
    /// Positional-digit construction: the k-th binary digit j_k(n) of n
    /// sets the sign of the α^k correction,
    /// ε_n/h = (1/2)[(-1)^n + Σ_{k=1}^{M(n)-1} (-1)^{j_k(n)} α^k],
    /// with M(n) = 1 + ⌊log₂ n⌋ binary digits.
    Pdc { alpha: f64 },
    /// Uncorrelated uniform reference: ε_n = W·r_n with r_n ∈ (0, 1).
    /// W is in units of J; `energy` returns ε_n/J for this variant.
    Random { bandwidth_w: f64, seed: u64 },
    /// Additive error model on top of any deterministic sequence:
    /// ε_n/h = base_n/h + (D/2)·r_n with r_n ∈ (-1, 1).
    Perturbed {
        base: Box<SequenceSpec>,
        noise_d: f64,
        seed: u64,
    },
}

impl SequenceSpec {
    /// Check parameter ranges: α, α′, β ∈ admissible intervals, W > 0, D ≥ 0.
    pub fn validate(&self) -> Result<()> {
        let check_alpha = |alpha: f64| -> Result<()> {
            if alpha > 0.0 && alpha < 1.0 {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "alpha must lie in (0, 1), got {alpha}"
                )))
            }
        };
        match self {
            SequenceSpec::Base { alpha } | SequenceSpec::Pdc { alpha } => check_alpha(*alpha),
            SequenceSpec::Mod6 { alpha, alpha_prime } => {
                check_alpha(*alpha)?;
                if *alpha_prime >= 0.0 && *alpha_prime < 1.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!(
                        "alpha_prime must lie in [0, 1), got {alpha_prime}"
                    )))
                }
            }
            SequenceSpec::Mod3 { alpha, beta } => {
                check_alpha(*alpha)?;
                if *beta >= 0.0 && *beta < 1.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!("beta must lie in [0, 1), got {beta}")))
                }
            }
            SequenceSpec::Random { bandwidth_w, .. } => {
                if *bandwidth_w > 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!(
                        "bandwidth_w must be positive, got {bandwidth_w}"
                    )))
                }
            }
            SequenceSpec::Perturbed { base, noise_d, .. } => {
                base.validate()?;
                if let SequenceSpec::Random { .. } = **base {
                    return Err(Error::domain(
                        "perturbed sequences require a deterministic base, not random",
                    ));
                }
                if *noise_d >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!(
                        "noise_d must be non-negative, got {noise_d}"
                    )))
                }
            }
        }
    }

    /// Dimensionless on-site energy of site `n` (n ≥ 1): ε_n/h, except for
    /// [`Random`](SequenceSpec::Random) where it is ε_n/J.
    pub fn energy(&self, n: usize) -> Result<f64> {
        self.validate()?;
        if n == 0 {
            return Err(Error::domain("site index n must be >= 1"));
        }
        Ok(self.energy_unchecked(n))
    }

    /// `energy` for a contiguous block of sites `n0 ..= n0 + len - 1`,
    /// validating once.
    pub fn energies(&self, n0: usize, len: usize) -> Result<Vec<f64>> {
        self.validate()?;
        if n0 == 0 {
            return Err(Error::domain("site index n0 must be >= 1"));
        }
        Ok((n0..n0 + len).map(|n| self.energy_unchecked(n)).collect())
    }

    pub(crate) fn energy_unchecked(&self, n: usize) -> f64 {
        match self {
            SequenceSpec::Base { alpha } => base_energy(n, *alpha),
            SequenceSpec::Mod6 { alpha, alpha_prime } => {
                let mut e = base_energy(n, *alpha);
                if n % 6 == 0 {
                    e += alpha_prime / 2.0;
                }
                e
            }
            SequenceSpec::Mod3 { alpha, beta } => {
                let mut e = base_energy(n, *alpha);
                if n % 3 == 0 {
                    let k = n / 3;
                    // -(β/4)·(1 + 3(-1)^k): +β/2 for odd k, -β for even k.
                    if k % 2 == 1 {
                        e += beta / 2.0;
                    } else {
                        e -= beta;
                    }
                }
                e
            }
            SequenceSpec::Pdc { alpha } => pdc_energy(n, *alpha),
            SequenceSpec::Random { bandwidth_w, seed } => {
                bandwidth_w * unit_open01(*seed, n as u64)
            }
            SequenceSpec::Perturbed {
                base,
                noise_d,
                seed,
            } => base.energy_unchecked(n) + 0.5 * noise_d * sym_open11(*seed, n as u64),
        }
    }

    /// The α parameter of the underlying deterministic construction, if any.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            SequenceSpec::Base { alpha }
            | SequenceSpec::Mod6 { alpha, .. }
            | SequenceSpec::Mod3 { alpha, .. }
            | SequenceSpec::Pdc { alpha } => Some(*alpha),
            SequenceSpec::Random { .. } => None,
            SequenceSpec::Perturbed { base, .. } => base.alpha(),
        }
    }

    /// True for the variant whose energies are in units of J instead of h.
    pub fn is_random(&self) -> bool {
        matches!(self, SequenceSpec::Random { .. })
    }

    /// Same construction with the α parameter replaced — the primitive that
    /// α-sweeps are built from. Random sequences have no α and pass through
    /// unchanged; a perturbed sequence rebuilds around its modified base.
    pub fn with_alpha(&self, alpha: f64) -> SequenceSpec {
        match self {
            SequenceSpec::Base { .. } => SequenceSpec::Base { alpha },
            SequenceSpec::Mod6 { alpha_prime, .. } => SequenceSpec::Mod6 {
                alpha,
                alpha_prime: *alpha_prime,
            },
            SequenceSpec::Mod3 { beta, .. } => SequenceSpec::Mod3 {
                alpha,
                beta: *beta,
            },
            SequenceSpec::Pdc { .. } => SequenceSpec::Pdc { alpha },
            SequenceSpec::Random { .. } => self.clone(),
            SequenceSpec::Perturbed {
                base,
                noise_d,
                seed,
            } => SequenceSpec::Perturbed {
                base: Box::new(base.with_alpha(alpha)),
                noise_d: *noise_d,
                seed: *seed,
            },
        }
    }

    /// Independent realization `k` of a stochastic sequence: the stored
    /// seed is replaced by a derived one, so realizations form a
    /// reproducible, order-independent family. Deterministic variants are
    /// returned unchanged.
    pub fn reseeded(&self, realization: u64) -> SequenceSpec {
        match self {
            SequenceSpec::Random { bandwidth_w, seed } => SequenceSpec::Random {
                bandwidth_w: *bandwidth_w,
                seed: derive_seed(*seed, realization),
            },
            SequenceSpec::Perturbed {
                base,
                noise_d,
                seed,
            } => SequenceSpec::Perturbed {
                base: base.clone(),
                noise_d: *noise_d,
                seed: derive_seed(*seed, realization),
            },
            _ => self.clone(),
        }
    }

    /// Wrap this sequence in the additive error model with amplitude `d`.
    /// Zero amplitude returns the sequence unchanged, so downstream
    /// consumers keep byte-identical energies (and evaluation paths)
    /// rather than a noise layer that happens to add 0.0.
    pub fn perturbed(&self, noise_d: f64, seed: u64) -> SequenceSpec {
        if noise_d == 0.0 {
            return self.clone();
        }
        SequenceSpec::Perturbed {
            base: Box::new(self.clone()),
            noise_d,
            seed,
        }
    }
}

impl std::fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SequenceSpec::Base { alpha } => write!(f, "base(alpha={alpha})"),
            SequenceSpec::Mod6 { alpha, alpha_prime } => {
                write!(f, "mod6(alpha={alpha}, alpha_prime={alpha_prime})")
            }
            SequenceSpec::Mod3 { alpha, beta } => write!(f, "mod3(alpha={alpha}, beta={beta})"),
            SequenceSpec::Pdc { alpha } => write!(f, "pdc(alpha={alpha})"),
            SequenceSpec::Random { bandwidth_w, seed } => {
                write!(f, "random(W={bandwidth_w}, seed={seed})")
            }
            SequenceSpec::Perturbed {
                base,
                noise_d,
                seed,
            } => write!(f, "perturbed({base}, D={noise_d}, seed={seed})"),
        }
    }
}

/// Base-sequence energy ε_n/h evaluated directly (early exit once the
/// running power of α underflows to zero).
fn base_energy(n: usize, alpha: f64) -> f64 {
    let parity = if n % 2 == 1 { -1.0 } else { 1.0 };
    let mut sum = 0.0;
    let mut pow = alpha; // α^(k-1) for k = 2
    for k in 2..=n + 1 {
        if pow == 0.0 {
            break;
        }
        let sign = if (n / k) % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign * pow;
        pow *= alpha;
    }
    0.5 * (parity - sum)
}

/// Number of binary digits of n ≥ 1: M(n) = 1 + ⌊log₂ n⌋.
pub fn pdc_digit_count(n: usize) -> u32 {
    assert!(n >= 1, "pdc_digit_count requires n >= 1");
    1 + n.ilog2()
}

/// Positional-digit-construction energy ε_n/h.
fn pdc_energy(n: usize, alpha: f64) -> f64 {
    let parity = if n % 2 == 1 { -1.0 } else { 1.0 };
    let m = pdc_digit_count(n);
    let mut sum = 0.0;
    let mut pow = alpha;
    for k in 1..m {
        let digit = (n >> k) & 1;
        let sign = if digit == 1 { -1.0 } else { 1.0 };
        sum += sign * pow;
        pow *= alpha;
    }
    0.5 * (parity + sum)
}

/// Exact integer-coefficient polynomial in α. Represents 2ε_n/h for the base
/// sequence (and differences thereof), so coefficients stay integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPolynomial {
    /// `coeffs[q]` multiplies α^q.
    coeffs: Vec<i64>,
}

impl AlphaPolynomial {
    /// The degree-n polynomial 2ε_n/h of the base sequence:
    /// constant term (-1)^n, coefficient -(-1)^⌊n/(q+1)⌋ at α^q for 1 ≤ q ≤ n.
    pub fn for_site(n: usize) -> AlphaPolynomial {
        assert!(n >= 1, "site index must be >= 1");
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(if n % 2 == 1 { -1 } else { 1 });
        for q in 1..=n {
            coeffs.push(base_series_coefficient(n, q));
        }
        AlphaPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> AlphaPolynomial {
        AlphaPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree of the polynomial (index of the last nonzero coefficient);
    /// zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0)
            .unwrap_or(0)
    }

    /// Index of the first nonzero coefficient. Errors on the zero
    /// polynomial (a degenerate difference, which the base sequence never
    /// produces for distinct sites).
    pub fn lowdeg(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .position(|&c| c != 0)
            .ok_or_else(|| Error::domain("zero polynomial has no lowest-degree term"))
    }

    /// Horner evaluation at α (summed from the highest power down, so
    /// heavily cancelling differences keep their leading small terms).
    pub fn eval(&self, alpha: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * alpha + c as f64;
        }
        acc
    }

    /// self - other, exactly.
    pub fn sub(&self, other: &AlphaPolynomial) -> AlphaPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0i64; len];
        for (q, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(q).copied().unwrap_or(0);
            let b = other.coeffs.get(q).copied().unwrap_or(0);
            *c = a - b;
        }
        AlphaPolynomial { coeffs }
    }
}

/// Coefficient of α^q (q ≥ 1) in the *untruncated* α-series of 2ε_n/h:
/// -(-1)^⌊n/(q+1)⌋. For q ≤ n this equals the polynomial coefficient of
/// [`AlphaPolynomial::for_site`]; beyond the truncation (q > n) the series
/// continues with -1 (since ⌊n/(q+1)⌋ = 0). The pairwise lowest-difference
/// analysis works on this stream, under which its counting bounds hold
/// uniformly in n.
pub fn base_series_coefficient(n: usize, q: usize) -> i64 {
    assert!(q >= 1, "series coefficient defined for q >= 1");
    if (n / (q + 1)) % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Constant term (-1)^n of the series of 2ε_n/h.
pub fn base_series_constant(n: usize) -> i64 {
    if n % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Period of the q-th series coefficient as a function of n: 2(q+1),
/// verified by exhaustive scan over n ≤ n_max. Returns the period, or an
/// error naming the first violating site (which would indicate a broken
/// coefficient formula).
pub fn coefficient_period(q: usize, n_max: usize) -> Result<usize> {
    if q == 0 {
        // (-1)^n has period 2 = 2(0+1); trivially true.
        return Ok(2);
    }
    let period = 2 * (q + 1);
    for n in 1..=n_max {
        if base_series_coefficient(n, q) != base_series_coefficient(n + period, q) {
            return Err(Error::domain(format!(
                "coefficient q={q} failed periodicity {period} at n={n}"
            )));
        }
    }
    Ok(period)
}

/// Joint period of all series coefficients up to order q_max:
/// 2·lcm(2, …, q_max+1). Truncating the base sequence at α^q_max makes it
/// exactly periodic with this period (verified by scan up to `n_scan`).
pub fn truncation_period(q_max: usize, n_scan: usize) -> Result<u64> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut l: u64 = 1;
    for k in 2..=(q_max as u64 + 1) {
        l = l / gcd(l, k) * k;
    }
    let period = 2 * l;
    for n in 1..=n_scan {
        let shifted = n + period as usize;
        if base_series_constant(n) != base_series_constant(shifted) {
            return Err(Error::domain(format!(
                "constant term failed joint periodicity {period} at n={n}"
            )));
        }
        for q in 1..=q_max {
            if base_series_coefficient(n, q) != base_series_coefficient(shifted, q) {
                return Err(Error::domain(format!(
                    "coefficient q={q} failed joint periodicity {period} at n={n}"
                )));
            }
        }
    }
    Ok(period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly_coeffs(n: usize) -> Vec<i64> {
        AlphaPolynomial::for_site(n).coeffs().to_vec()
    }

    #[test]
    fn first_sites_match_hand_expansion() {
        // 2ε_n/h for n = 1..4, 6, 7, written out by hand from the defining sum.
        assert_eq!(poly_coeffs(1), vec![-1, -1]);
        assert_eq!(poly_coeffs(2), vec![1, 1, -1]);
        assert_eq!(poly_coeffs(3), vec![-1, 1, 1, -1]);
        assert_eq!(poly_coeffs(4), vec![1, -1, 1, 1, -1]);
        assert_eq!(poly_coeffs(6), vec![1, 1, -1, 1, 1, 1, -1]);
        assert_eq!(poly_coeffs(7), vec![-1, 1, -1, 1, 1, 1, 1, -1]);
    }

    #[test]
    fn energy_matches_polynomial_at_sample_points() {
        for &alpha in &[0.05, 0.25, 0.3, 0.7] {
            let spec = SequenceSpec::Base { alpha };
            for n in [1usize, 2, 3, 7, 50, 313, 1000] {
                let via_poly = AlphaPolynomial::for_site(n).eval(alpha) / 2.0;
                let direct = spec.energy(n).unwrap();
                assert!(
                    (via_poly - direct).abs() <= 1e-12 * (1.0 + direct.abs()),
                    "n={n} alpha={alpha}: poly {via_poly} vs direct {direct}"
                );
            }
        }
    }

    #[test]
    fn site_one_closed_form() {
        let alpha = 0.37;
        let e1 = SequenceSpec::Base { alpha }.energy(1).unwrap();
        assert!((e1 - (-(1.0 + alpha) / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn modifications_shift_only_their_multiples() {
        let alpha = 0.25;
        let base = SequenceSpec::Base { alpha };
        let mod6 = SequenceSpec::Mod6 {
            alpha,
            alpha_prime: 0.22,
        };
        let mod3 = SequenceSpec::Mod3 { alpha, beta: 0.1725 };
        for n in 1..=200 {
            let b = base.energy(n).unwrap();
            let m6 = mod6.energy(n).unwrap();
            let m3 = mod3.energy(n).unwrap();
            if n % 6 == 0 {
                assert!((m6 - b - 0.11).abs() < 1e-15, "n={n}");
            } else {
                assert_eq!(m6, b, "n={n}");
            }
            if n % 3 == 0 {
                let k = n / 3;
                let shift = if k % 2 == 1 { 0.1725 / 2.0 } else { -0.1725 };
                assert!((m3 - b - shift).abs() < 1e-15, "n={n}");
            } else {
                assert_eq!(m3, b, "n={n}");
            }
        }
    }

    #[test]
    fn pdc_small_sites() {
        let alpha = 0.3;
        let pdc = SequenceSpec::Pdc { alpha };
        // n = 1 has a single binary digit: no corrections at all.
        assert!((pdc.energy(1).unwrap() - (-0.5)).abs() < 1e-15);
        // n = 2 = 10₂: digit j₁ = 1 → (1/2)(1 - α).
        assert!((pdc.energy(2).unwrap() - 0.5 * (1.0 - alpha)).abs() < 1e-15);
        // n = 5 = 101₂: j₁ = 0, j₂ = 1 → (1/2)(-1 + α - α²).
        let expect = 0.5 * (-1.0 + alpha - alpha * alpha);
        assert!((pdc.energy(5).unwrap() - expect).abs() < 1e-15);
    }

    /// PDC coefficient vector of 2ε_n/h as exact integers, for the
    /// degeneracy identities below.
    fn pdc_coeffs(n: usize) -> Vec<i64> {
        let m = pdc_digit_count(n) as usize;
        let mut c = vec![0i64; m];
        c[0] = if n % 2 == 1 { -1 } else { 1 };
        for k in 1..m {
            c[k] = if (n >> k) & 1 == 1 { -1 } else { 1 };
        }
        c
    }

    fn pdc_pair_sum(a: usize, b: usize) -> Vec<i64> {
        let ca = pdc_coeffs(a);
        let cb = pdc_coeffs(b);
        let len = ca.len().max(cb.len());
        (0..len)
            .map(|q| ca.get(q).copied().unwrap_or(0) + cb.get(q).copied().unwrap_or(0))
            .collect()
    }

    #[test]
    fn pdc_engineered_degeneracies_are_exact() {
        // Adjacent-pair sums coincide for every odd n: ε_n + ε_{n+1} equals
        // ε_{n-1} + ε_{n+2} exactly (as integer coefficient vectors).
        for n in (3..400).step_by(2) {
            assert_eq!(
                pdc_pair_sum(n, n + 1),
                pdc_pair_sum(n - 1, n + 2),
                "odd n = {n}"
            );
        }
        // And the second family: (n, n+1) vs (n-2, n+3) at n = 7 + 4k.
        for n in (7..400).step_by(4) {
            assert_eq!(
                pdc_pair_sum(n, n + 1),
                pdc_pair_sum(n - 2, n + 3),
                "n = {n}"
            );
        }
    }

    #[test]
    fn random_draws_are_reproducible_and_in_range() {
        let spec = SequenceSpec::Random {
            bandwidth_w: 26.0,
            seed: 7,
        };
        let a = spec.energies(1, 1000).unwrap();
        let b = spec.energies(1, 1000).unwrap();
        assert_eq!(a, b);
        for (i, &v) in a.iter().enumerate() {
            assert!(v > 0.0 && v < 26.0, "site {} out of range: {v}", i + 1);
        }
        // Mean of W·U(0,1) should be near W/2.
        let mean = a.iter().sum::<f64>() / a.len() as f64;
        assert!((mean - 13.0).abs() < 1.0, "mean {mean}");
        // A different seed gives a different sequence.
        let other = SequenceSpec::Random {
            bandwidth_w: 26.0,
            seed: 8,
        };
        assert_ne!(a, other.energies(1, 1000).unwrap());
    }

    #[test]
    fn perturbation_with_zero_amplitude_is_identity() {
        let base = SequenceSpec::Mod6 {
            alpha: 0.25,
            alpha_prime: 0.22,
        };
        let pert = base.perturbed(0.0, 99);
        for n in 1..=300 {
            assert_eq!(pert.energy(n).unwrap(), base.energy(n).unwrap());
        }
    }

    #[test]
    fn perturbation_stays_within_half_d() {
        let base = SequenceSpec::Base { alpha: 0.25 };
        let d = 1e-3;
        let pert = base.perturbed(d, 123);
        for n in 1..=500 {
            let delta = pert.energy(n).unwrap() - base.energy(n).unwrap();
            assert!(delta.abs() < 0.5 * d, "n={n}: delta {delta}");
        }
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(SequenceSpec::Base { alpha: 0.0 }.validate().is_err());
        assert!(SequenceSpec::Base { alpha: 1.0 }.validate().is_err());
        assert!(SequenceSpec::Base { alpha: 0.5 }.energy(0).is_err());
        assert!(SequenceSpec::Random {
            bandwidth_w: -1.0,
            seed: 0
        }
        .validate()
        .is_err());
        let nested_random = SequenceSpec::Random {
            bandwidth_w: 1.0,
            seed: 0,
        }
        .perturbed(0.1, 0);
        assert!(nested_random.validate().is_err());
    }

    #[test]
    fn coefficient_periods_match_formula() {
        for q in 0..=8 {
            assert_eq!(coefficient_period(q, 1000).unwrap(), 2 * (q + 1));
        }
    }

    #[test]
    fn truncated_sequence_period_is_840_at_order_six() {
        assert_eq!(truncation_period(6, 2000).unwrap(), 840);
    }

    #[test]
    fn lowdeg_of_explicit_differences() {
        let p1 = AlphaPolynomial::for_site(1);
        let p2 = AlphaPolynomial::for_site(2);
        let p3 = AlphaPolynomial::for_site(3);
        // ε₃ - ε₂ has constant term -2 → lowdeg 0.
        assert_eq!(p3.sub(&p2).lowdeg().unwrap(), 0);
        // ε₃ - ε₁ = (2α + α² - α³)/... → first nonzero at α¹.
        assert_eq!(p3.sub(&p1).lowdeg().unwrap(), 1);
        assert_eq!(p3.sub(&p1).coeffs(), &[0, 2, 1, -1]);
        assert!(p1.sub(&p1).lowdeg().is_err());
    }

    proptest! {
        #[test]
        fn base_band_bound_holds(n in 1usize..2000, alpha in 0.01f64..0.95) {
            let e = SequenceSpec::Base { alpha }.energy(n).unwrap();
            let bound = 0.5 * (1.0 + alpha / (1.0 - alpha)) + 1e-12;
            prop_assert!(e.abs() <= bound, "n={n} alpha={alpha} e={e} bound={bound}");
        }

        #[test]
        fn polynomial_agrees_with_direct_evaluation(n in 1usize..400, alpha in 0.05f64..0.9) {
            let via_poly = AlphaPolynomial::for_site(n).eval(alpha) / 2.0;
            let direct = SequenceSpec::Base { alpha }.energy(n).unwrap();
            prop_assert!((via_poly - direct).abs() <= 1e-11 * (1.0 + direct.abs()));
        }

        #[test]
        fn polynomial_degree_equals_site(n in 1usize..500) {
            prop_assert_eq!(AlphaPolynomial::for_site(n).degree(), n);
        }

        #[test]
        fn series_coefficient_periodicity(q in 1usize..9, n in 1usize..5000) {
            prop_assert_eq!(
                base_series_coefficient(n, q),
                base_series_coefficient(n + 2 * (q + 1), q)
            );
        }
    }
}
