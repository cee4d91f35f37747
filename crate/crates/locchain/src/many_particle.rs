//! Fixed-N Fock sectors: basis, interacting Hamiltonian, many-body IPR,
//! and transition-element analysis.
//!
//! Spin chains with XY coupling map onto spinless fermions; with
//! nearest-neighbour hopping the Jordan–Wigner string never crosses an
//! occupied site, so every hop element is +J/2 and the sector Hamiltonian
//! is real symmetric:
//!
//! ```text
//! H/J = Σ_n (h/J)(ε_n/h) a†_n a_n + Δ Σ_n a†_n a_n a†_{n+1} a_{n+1}
//!       + (1/2) Σ_n (a†_n a_{n+1} + h.c.).
//! ```
//!
//! A sector is spanned by registers |Φ(k₁,…,k_N)⟩, occupation masks with
//! N bits; the many-body IPR I_N = 1/Σ|c|⁴ over registers detects
//! hybridization of resonating on-site configurations. Interaction-driven
//! transitions (k₃,k₄) → (k₁,k₂) carry a locality order κ — the minimal
//! total displacement over a common anchor bond — and their matrix
//! elements scale as K^κ with K = J/2αh.

use crate::error::{Error, Result};
use crate::linalg::{eigh, Eigh, SparseSym};
use crate::sequences::SequenceSpec;
use crate::single_particle::{degenerate_flags, ChainConfig, SpectrumResult};
use rayon::prelude::*;
use serde::Serialize;

/// Largest chain for which a Fock sector may be enumerated.
pub const MAX_SECTOR_SITES: usize = 28;

/// Largest sector dimension accepted by the dense eigensolver
/// (C(14,7) = 3432 still fits).
pub const DENSE_DIM_LIMIT: usize = 3500;

/// Binomial coefficient C(l, n) in u64 (exact for the guarded sizes).
pub fn binomial(l: usize, n: usize) -> u64 {
    if n > l {
        return 0;
    }
    let n = n.min(l - n);
    let mut acc: u64 = 1;
    for i in 0..n {
        acc = acc * (l - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// C(l, n) in f64, safe for arbitrarily large guard-violation reports.
fn binomial_f64(l: usize, n: usize) -> f64 {
    if n > l {
        return 0.0;
    }
    let n = n.min(l - n);
    let mut acc = 1.0f64;
    for i in 0..n {
        acc *= (l - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn dense_mib(dim: f64) -> u64 {
    (dim * dim * 8.0 / (1024.0 * 1024.0)).ceil() as u64
}

/// All N-particle occupation masks over a chain section, in increasing
/// mask order. Bit i of a mask is the site n0 + i of the owning
/// [`ChainConfig`]; registers in I/O are 1-based absolute site lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    length_l: usize,
    n_particles: usize,
    states: Vec<u64>,
}

impl FockBasis {
    /// Enumerate the sector (Gosper's next-bit-permutation walk).
    pub fn build(length_l: usize, n_particles: usize) -> Result<FockBasis> {
        if length_l > MAX_SECTOR_SITES {
            let dim = binomial_f64(length_l, n_particles);
            return Err(Error::SizeGuard {
                dim: dim as usize,
                limit: DENSE_DIM_LIMIT,
                mib: dense_mib(dim),
            });
        }
        if n_particles > length_l {
            return Err(Error::domain(
                "cannot place more particles than sites in a sector",
            ));
        }
        let dim = binomial(length_l, n_particles) as usize;
        let mut states = Vec::with_capacity(dim);
        if n_particles == 0 {
            states.push(0);
        } else {
            let limit: u64 = 1 << length_l;
            let mut v: u64 = (1 << n_particles) - 1;
            while v < limit {
                states.push(v);
                // Gosper's hack: next integer with the same popcount.
                let t = v | (v - 1);
                v = (t + 1) | (((!t & t.wrapping_add(1)) - 1) >> (v.trailing_zeros() + 1));
            }
        }
        debug_assert_eq!(states.len(), dim);
        Ok(FockBasis {
            length_l,
            n_particles,
            states,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn sites(&self) -> usize {
        self.length_l
    }

    pub fn particles(&self) -> usize {
        self.n_particles
    }

    pub fn state(&self, index: usize) -> u64 {
        self.states[index]
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    /// Ordinal of a mask, if it belongs to the sector.
    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.states.binary_search(&mask).ok()
    }

    /// Absolute (1-based) occupied sites of `mask` for a section starting
    /// at `n0`, ascending.
    pub fn register_sites(&self, mask: u64, n0: usize) -> Vec<usize> {
        (0..self.length_l)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| n0 + i)
            .collect()
    }

    /// Mask of the register |Φ(k₁,…,k_N)⟩ given absolute site numbers.
    pub fn register_mask(&self, sites: &[usize], n0: usize) -> Result<u64> {
        if sites.len() != self.n_particles {
            return Err(Error::domain(format!(
                "register lists {} sites but the sector holds {} particles",
                sites.len(),
                self.n_particles
            )));
        }
        let mut mask: u64 = 0;
        for &k in sites {
            if k < n0 || k >= n0 + self.length_l {
                return Err(Error::domain(format!(
                    "register site {k} outside section [{n0}, {}]",
                    n0 + self.length_l - 1
                )));
            }
            let bit = 1u64 << (k - n0);
            if mask & bit != 0 {
                return Err(Error::domain(format!("register repeats site {k}")));
            }
            mask |= bit;
        }
        Ok(mask)
    }
}

/// Sector Hamiltonian in units of J as an upper-triangular sparse store.
pub fn hamiltonian(config: &ChainConfig, basis: &FockBasis) -> Result<SparseSym> {
    config.validate()?;
    if basis.sites() != config.length {
        return Err(Error::domain(
            "basis and chain section have different lengths",
        ));
    }
    let diag_site = config.site_energies()?;
    let l = config.length;
    let mut triplets: Vec<(u32, u32, f64)> = Vec::with_capacity(basis.len() * (l / 2 + 1));
    for (idx, &mask) in basis.states().iter().enumerate() {
        let mut e = 0.0;
        for (i, d) in diag_site.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e += d;
            }
        }
        e += config.delta * (mask & (mask >> 1)).count_ones() as f64;
        triplets.push((idx as u32, idx as u32, e));
        // Right-hops only: the partner mask is strictly larger, so each
        // bond pair lands once in the upper triangle.
        for i in 0..l - 1 {
            if mask >> i & 1 == 1 && mask >> (i + 1) & 1 == 0 {
                let hopped = mask ^ (0b11 << i);
                let jdx = basis
                    .index_of(hopped)
                    .expect("hop conserves particle number");
                triplets.push((idx as u32, jdx as u32, 0.5));
            }
        }
    }
    Ok(SparseSym::from_upper_triplets(basis.len(), triplets))
}

/// Diagonalized Fock sector.
#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    pub config: ChainConfig,
    pub basis: FockBasis,
    eig: Eigh,
}

impl SectorSpectrum {
    pub fn len(&self) -> usize {
        self.eig.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.eig.dim() == 0
    }

    pub fn energies(&self) -> &[f64] {
        &self.eig.values
    }

    /// Register amplitudes of eigenstate λ, ordered as the basis.
    pub fn vector(&self, lambda: usize) -> &[f64] {
        self.eig.vector(lambda)
    }

    pub fn degenerate_flags(&self) -> Vec<bool> {
        degenerate_flags(&self.eig.values)
    }

    /// Register (absolute sites) with the largest weight in eigenstate λ.
    pub fn dominant_register(&self, lambda: usize) -> Vec<usize> {
        let v = self.vector(lambda);
        let mut best = 0;
        let mut best_w = -1.0;
        for (i, &c) in v.iter().enumerate() {
            if c * c > best_w {
                best_w = c * c;
                best = i;
            }
        }
        self.basis.register_sites(self.basis.state(best), self.config.n0)
    }
}

/// Dense diagonalization of the sector, guarded by [`DENSE_DIM_LIMIT`].
pub fn diagonalize_sector(config: &ChainConfig, basis: &FockBasis) -> Result<SectorSpectrum> {
    if basis.len() > DENSE_DIM_LIMIT {
        return Err(Error::SizeGuard {
            dim: basis.len(),
            limit: DENSE_DIM_LIMIT,
            mib: dense_mib(basis.len() as f64),
        });
    }
    let h = hamiltonian(config, basis)?;
    Ok(SectorSpectrum {
        config: config.clone(),
        basis: basis.clone(),
        eig: eigh(&h.to_dense())?,
    })
}

/// Many-body inverse participation ratio over the register basis:
/// identical functional form to the one-particle IPR.
pub fn ipr_many(amplitudes: &[f64]) -> Result<f64> {
    crate::single_particle::ipr(amplitudes)
}

/// IPR statistics of a sector spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct SectorIprStats {
    pub mean: f64,
    pub max: f64,
    pub argmax_state: usize,
    /// Register (absolute sites) dominating the maximal-IPR state.
    pub argmax_register: Vec<usize>,
    pub excluded_degenerate: usize,
}

pub fn sector_ipr_stats(spectrum: &SectorSpectrum) -> Result<SectorIprStats> {
    let flags = spectrum.degenerate_flags();
    let mut sum = 0.0;
    let mut count = 0usize;
    let mut max = f64::MIN;
    let mut argmax = 0usize;
    for lambda in 0..spectrum.len() {
        if flags[lambda] {
            continue;
        }
        let i = ipr_many(spectrum.vector(lambda))?;
        sum += i;
        count += 1;
        if i > max {
            max = i;
            argmax = lambda;
        }
    }
    if count == 0 {
        return Err(Error::domain(
            "every state in the sector is numerically degenerate",
        ));
    }
    Ok(SectorIprStats {
        mean: sum / count as f64,
        max,
        argmax_state: argmax,
        argmax_register: spectrum.dominant_register(argmax),
        excluded_degenerate: spectrum.len() - count,
    })
}

/// One α sample of a sector IPR scan.
#[derive(Debug, Clone, Serialize)]
pub struct SectorIprPoint {
    pub alpha: f64,
    pub mean_ipr: f64,
    pub max_ipr: f64,
    pub argmax_register: Vec<usize>,
}

/// ⟨I_N⟩(α) and I_Nmax(α) over an α grid, one diagonalization per point,
/// data-parallel. The template's α is replaced at each grid point; the
/// basis is built once and shared.
pub fn sector_ipr_scan(
    template: &ChainConfig,
    n_particles: usize,
    alpha_grid: &[f64],
) -> Result<Vec<SectorIprPoint>> {
    template.validate()?;
    let basis = FockBasis::build(template.length, n_particles)?;
    alpha_grid
        .par_iter()
        .map(|&alpha| {
            let mut cfg = template.clone();
            cfg.spec = template.spec.with_alpha(alpha);
            let sp = diagonalize_sector(&cfg, &basis)?;
            let stats = sector_ipr_stats(&sp)?;
            Ok(SectorIprPoint {
                alpha,
                mean_ipr: stats.mean,
                max_ipr: stats.max,
                argmax_register: stats.argmax_register,
            })
        })
        .collect()
}

/// Locality order κ of a two-particle transition (k₃,k₄) → (k₁,k₂): the
/// least total displacement when the four sites are referred to a common
/// anchor bond (p, p+1). Resonant transitions require κ even; matrix
/// elements fall off as K^κ.
pub fn kappa(k1: usize, k2: usize, k3: usize, k4: usize) -> u64 {
    let (k1, k2, k3, k4) = (k1 as i64, k2 as i64, k3 as i64, k4 as i64);
    let lo = k1.min(k2).min(k3).min(k4) - 2;
    let hi = k1.max(k2).max(k3).max(k4) + 2;
    (lo..=hi)
        .map(|p| {
            ((k1 - p).abs() + (k2 - p - 1).abs() + (k3 - p - 1).abs() + (k4 - p).abs()) as u64
        })
        .min()
        .expect("non-empty anchor range")
}

/// Localized single-particle modes arranged by their home site, with the
/// dominant amplitude made positive. This is the U entering the
/// interaction tensor; requires the strong-localization regime.
#[derive(Debug, Clone)]
pub struct LocalizedModes {
    n0: usize,
    /// modes[k][p]: amplitude at section offset p of the mode whose
    /// dominant site is n0 + k.
    modes: Vec<Vec<f64>>,
}

impl LocalizedModes {
    pub fn from_spectrum(spectrum: &SpectrumResult) -> Result<LocalizedModes> {
        let l = spectrum.len();
        let mut modes: Vec<Option<Vec<f64>>> = vec![None; l];
        for lambda in 0..l {
            let v = spectrum.vector(lambda);
            let (mut best, mut best_w) = (0usize, -1.0f64);
            for (i, &c) in v.iter().enumerate() {
                if c * c > best_w {
                    best_w = c * c;
                    best = i;
                }
            }
            if best_w <= 0.5 {
                return Err(Error::NotLocalized {
                    eigenindex: lambda,
                    max_weight: best_w,
                });
            }
            let sign = if v[best] < 0.0 { -1.0 } else { 1.0 };
            let fixed: Vec<f64> = v.iter().map(|&c| sign * c).collect();
            if modes[best].replace(fixed).is_some() {
                return Err(Error::domain("two modes share a dominant site"));
            }
        }
        Ok(LocalizedModes {
            n0: spectrum.config.n0,
            modes: modes.into_iter().map(|m| m.expect("bijection")).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Amplitude of the mode homed at absolute site `k` on absolute site `p`.
    pub fn amplitude(&self, p: usize, k: usize) -> f64 {
        self.modes[k - self.n0][p - self.n0]
    }

    /// Interaction tensor element V(k₁,k₂,k₃,k₄) = Σ_p U_{p,k₁} U_{p+1,k₂}
    /// U_{p+1,k₃} U_{p,k₄} over the section's bonds (absolute site labels).
    pub fn v_element(&self, k1: usize, k2: usize, k3: usize, k4: usize) -> Result<f64> {
        let l = self.modes.len();
        for &k in &[k1, k2, k3, k4] {
            if k < self.n0 || k >= self.n0 + l {
                return Err(Error::domain(format!(
                    "mode label {k} outside section [{}, {}]",
                    self.n0,
                    self.n0 + l - 1
                )));
            }
        }
        let (a, b, c, d) = (
            &self.modes[k1 - self.n0],
            &self.modes[k2 - self.n0],
            &self.modes[k3 - self.n0],
            &self.modes[k4 - self.n0],
        );
        let mut v = 0.0;
        for p in 0..l - 1 {
            v += a[p] * b[p + 1] * c[p + 1] * d[p];
        }
        Ok(v)
    }
}

/// A hybridized eigenstate: which registers share its weight.
#[derive(Debug, Clone, Serialize)]
pub struct HybridizedState {
    pub eigenindex: usize,
    pub energy: f64,
    pub ipr: f64,
    /// (register sites, weight) with weight ≥ 0.05, heaviest first.
    pub registers: Vec<(Vec<usize>, f64)>,
}

/// All eigenstates with IPR above `ipr_threshold`, with the registers
/// carrying at least 5% of their weight.
pub fn hybridization_report(
    spectrum: &SectorSpectrum,
    ipr_threshold: f64,
) -> Result<Vec<HybridizedState>> {
    let mut out = Vec::new();
    for lambda in 0..spectrum.len() {
        let v = spectrum.vector(lambda);
        let i = ipr_many(v)?;
        if i <= ipr_threshold {
            continue;
        }
        let mut regs: Vec<(Vec<usize>, f64)> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c * c >= 0.05)
            .map(|(idx, &c)| {
                (
                    spectrum
                        .basis
                        .register_sites(spectrum.basis.state(idx), spectrum.config.n0),
                    c * c,
                )
            })
            .collect();
        regs.sort_by(|a, b| b.1.total_cmp(&a.1));
        out.push(HybridizedState {
            eigenindex: lambda,
            energy: spectrum.energies()[lambda],
            ipr: i,
            registers: regs,
        });
    }
    Ok(out)
}

/// IPRs of every eigenstate over an ensemble of sequence realizations.
/// Deterministic variants contribute a single spectrum; stochastic ones
/// are reseeded per realization.
pub fn ensemble_sector_iprs(
    template: &ChainConfig,
    n_particles: usize,
    realizations: usize,
) -> Result<Vec<f64>> {
    template.validate()?;
    let stochastic = matches!(
        template.spec,
        SequenceSpec::Random { .. } | SequenceSpec::Perturbed { .. }
    );
    let n_real = if stochastic { realizations.max(1) } else { 1 };
    let basis = FockBasis::build(template.length, n_particles)?;
    let per: Vec<Vec<f64>> = (0..n_real)
        .into_par_iter()
        .map(|k| {
            let mut cfg = template.clone();
            cfg.spec = template.spec.reseeded(k as u64);
            let sp = diagonalize_sector(&cfg, &basis)?;
            (0..sp.len()).map(|l| ipr_many(sp.vector(l))).collect()
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// A normalized distribution P(I): ∫ P dI = 1 over the covered range.
#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub density: Vec<f64>,
    /// Total samples, including any that fell outside the edges.
    pub samples: usize,
    /// Samples below the first / above the last edge.
    pub underflow: usize,
    pub overflow: usize,
}

/// Bin `values` into `bin_edges` (ascending; value in [eᵢ, eᵢ₊₁)) and
/// normalize by total sample count so clipped tails show up as missing
/// probability mass.
pub fn histogram(values: &[f64], bin_edges: &[f64]) -> Result<Histogram> {
    if bin_edges.len() < 2 || bin_edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("need at least 2 strictly increasing bin edges"));
    }
    if values.is_empty() {
        return Err(Error::domain("histogram of an empty sample"));
    }
    let nb = bin_edges.len() - 1;
    let mut counts = vec![0usize; nb];
    let mut underflow = 0usize;
    let mut overflow = 0usize;
    for &v in values {
        if v < bin_edges[0] {
            underflow += 1;
        } else if v >= bin_edges[nb] {
            overflow += 1;
        } else {
            let i = match bin_edges.binary_search_by(|e| e.total_cmp(&v)) {
                Ok(i) => i,
                Err(i) => i - 1,
            };
            counts[i.min(nb - 1)] += 1;
        }
    }
    let total = values.len() as f64;
    let density = counts
        .iter()
        .zip(bin_edges.windows(2))
        .map(|(&c, w)| c as f64 / total / (w[1] - w[0]))
        .collect();
    Ok(Histogram {
        bin_edges: bin_edges.to_vec(),
        density,
        samples: values.len(),
        underflow,
        overflow,
    })
}

/// Fraction of samples strictly above `threshold`.
pub fn tail_fraction(values: &[f64], threshold: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().filter(|&&v| v > threshold).count() as f64 / values.len() as f64
}
