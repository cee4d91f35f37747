//! Batch command-line front end: one subcommand per analysis, a TOML
//! campaign mode for sweeps, CSV/JSON emission with manifest sidecars.
//!
//! Every subcommand validates its parameters before any computation
//! starts, writes its results through [`crate::output`] (so reruns with
//! identical parameters produce byte-identical files), and reports a
//! one-line summary on stdout. Exit codes: 0 success, 2 for invalid
//! parameters or usage, 1 for internal failures.

use std::path::PathBuf;
use std::sync::Once;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{self, Lifetime};
use crate::error::{Error, Result};
use crate::many_particle;
use crate::number_theory::LowdegProfile;
use crate::output::{self, Cell, RunManifest};
use crate::resonance_gap::{self, DEFAULT_N_RANGE};
use crate::sequences::{AlphaPolynomial, SequenceSpec};
use crate::single_particle::{self, ChainConfig};

/// α used to instantiate a sweep template when the user gives a grid but
/// no `--alpha`; every grid point replaces it before anything is computed.
const SWEEP_PLACEHOLDER_ALPHA: f64 = 0.25;

#[derive(Debug, Parser)]
#[command(
    name = "locchain",
    version,
    about = "Engineered on-site energy sequences: localization analyses at desk scale",
    propagate_version = true
)]
pub struct Cli {
    /// Worker threads for parameter sweeps (default: all cores; the
    /// LOCCHAIN_JOBS environment variable is consulted when the flag is
    /// absent). Output order never depends on the worker count.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write on-site energies as CSV (columns: n, eps_over_h).
    Seq(SeqArgs),
    /// Exact decay-exponent table (columns: n, m, lowdeg, nu).
    Nu(NuArgs),
    /// Single-particle IPR sweep over alpha (columns: alpha, mean_ipr,
    /// max_ipr, argmax_site).
    Ipr1(Ipr1Args),
    /// N-particle sector IPR sweep over alpha (columns: alpha, mean_ipr,
    /// max_ipr, argmax_register).
    #[command(name = "iprN")]
    IprN(IprNArgs),
    /// Zero-energy pair-transition gaps (columns: n, k1, k2, k3, k4,
    /// kappa, class, deps_over_h).
    Gap(GapArgs),
    /// Minimal-gap degradation under additive site-energy errors
    /// (columns: d_exp, d, seed, r, mean, stddev).
    GapNoise(GapNoiseArgs),
    /// Pair-shift resonance scan (columns: n, gap_over_h, six_k_minus_one).
    Broadband(BroadbandArgs),
    /// Register survival amplitude |A(t)|^2 (columns: t, amp_sq).
    Evolve(EvolveArgs),
    /// Eigenstate IPR histogram over realizations (JSON: bin_edges,
    /// density, samples, underflow, overflow).
    Hist(HistArgs),
    /// alpha(h/J) curves at fixed mean single-particle IPR (columns:
    /// target, h_over_j, alpha; unattainable targets yield NA rows).
    Scaling(ScalingArgs),
    /// Screen modification parameters for recreated resonances (columns:
    /// label, value, floor, ok).
    Audit(AuditArgs),
    /// Execute a TOML campaign: [[job]] tables carrying cmd = "<name>"
    /// plus the subcommand's flags as keys.
    Run(RunArgs),
}

/// Sequence-variant selection shared by most subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct VariantArgs {
    /// Sequence family: base | mod6 | mod3 | pdc | random.
    #[arg(long)]
    pub variant: Option<String>,
    /// Correction strength alpha of the polynomial construction.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Period-6 modification amplitude alpha' (variant mod6).
    #[arg(long)]
    pub alphap: Option<f64>,
    /// Period-3 modification amplitude beta (variant mod3).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Disorder bandwidth W in units of J (variant random).
    #[arg(long = "W")]
    pub bandwidth_w: Option<f64>,
    /// Base RNG seed for stochastic variants (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Additive site-energy error amplitude D in units of h, layered on
    /// top of the selected deterministic sequence (default 0 = off).
    #[arg(long)]
    pub noise_d: Option<f64>,
}

impl VariantArgs {
    fn any_set(&self) -> bool {
        self.variant.is_some()
            || self.alpha.is_some()
            || self.alphap.is_some()
            || self.beta.is_some()
            || self.bandwidth_w.is_some()
            || self.seed.is_some()
            || self.noise_d.is_some()
    }

    /// Build the sequence these flags describe, rejecting missing or
    /// inapplicable parameters by name.
    pub fn build(&self) -> Result<SequenceSpec> {
        let name = self.variant.as_deref().unwrap_or("base");
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| Error::domain(format!("--{flag} is required for variant {name}")))
        };
        let forbid = |set: bool, flag: &str| {
            if set {
                Err(Error::domain(format!(
                    "--{flag} does not apply to variant {name}"
                )))
            } else {
                Ok(())
            }
        };
        let core = match name {
            "base" => {
                forbid(self.alphap.is_some(), "alphap")?;
                forbid(self.beta.is_some(), "beta")?;
                forbid(self.bandwidth_w.is_some(), "W")?;
                SequenceSpec::Base {
                    alpha: need(self.alpha, "alpha")?,
                }
            }
            "mod6" => {
                forbid(self.beta.is_some(), "beta")?;
                forbid(self.bandwidth_w.is_some(), "W")?;
                SequenceSpec::Mod6 {
                    alpha: need(self.alpha, "alpha")?,
                    alpha_prime: need(self.alphap, "alphap")?,
                }
            }
            "mod3" => {
                forbid(self.alphap.is_some(), "alphap")?;
                forbid(self.bandwidth_w.is_some(), "W")?;
                SequenceSpec::Mod3 {
                    alpha: need(self.alpha, "alpha")?,
                    beta: need(self.beta, "beta")?,
                }
            }
            "pdc" => {
                forbid(self.alphap.is_some(), "alphap")?;
                forbid(self.beta.is_some(), "beta")?;
                forbid(self.bandwidth_w.is_some(), "W")?;
                SequenceSpec::Pdc {
                    alpha: need(self.alpha, "alpha")?,
                }
            }
            "random" => {
                forbid(self.alpha.is_some(), "alpha")?;
                forbid(self.alphap.is_some(), "alphap")?;
                forbid(self.beta.is_some(), "beta")?;
                SequenceSpec::Random {
                    bandwidth_w: need(self.bandwidth_w, "W")?,
                    seed: self.seed.unwrap_or(0),
                }
            }
            other => {
                return Err(Error::domain(format!(
                    "unknown variant '{other}' (expected base, mod6, mod3, pdc, or random)"
                )))
            }
        };
        let d = self.noise_d.unwrap_or(0.0);
        let spec = if d != 0.0 {
            core.perturbed(d, self.seed.unwrap_or(0))
        } else {
            core
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Like [`build`](Self::build), but a command-specific default steps
    /// in when no variant flag was given at all.
    pub fn build_or(&self, fallback: SequenceSpec) -> Result<SequenceSpec> {
        if self.any_set() {
            self.build()
        } else {
            fallback.validate()?;
            Ok(fallback)
        }
    }

    /// Like [`build`](Self::build) for α-sweep commands: the grid
    /// replaces α at every point, so `--alpha` may be omitted.
    pub fn build_for_sweep(&self) -> Result<SequenceSpec> {
        let mut with_default = self.clone();
        if with_default.alpha.is_none() {
            with_default.alpha = Some(SWEEP_PLACEHOLDER_ALPHA);
        }
        let spec = with_default.build()?;
        if spec.alpha().is_none() {
            return Err(Error::domain(
                "this command sweeps alpha; pick an alpha-bearing variant (not random)",
            ));
        }
        Ok(spec)
    }
}

/// Record the resolved sequence parameters (and any seeds they carry)
/// into the manifest.
fn record_spec(spec: &SequenceSpec, manifest: &mut RunManifest) {
    match spec {
        SequenceSpec::Base { alpha } => {
            manifest.set("variant", "base").set("alpha", alpha);
        }
        SequenceSpec::Mod6 { alpha, alpha_prime } => {
            manifest
                .set("variant", "mod6")
                .set("alpha", alpha)
                .set("alphap", alpha_prime);
        }
        SequenceSpec::Mod3 { alpha, beta } => {
            manifest
                .set("variant", "mod3")
                .set("alpha", alpha)
                .set("beta", beta);
        }
        SequenceSpec::Pdc { alpha } => {
            manifest.set("variant", "pdc").set("alpha", alpha);
        }
        SequenceSpec::Random { bandwidth_w, seed } => {
            manifest
                .set("variant", "random")
                .set("W", bandwidth_w)
                .set("seed", seed);
            manifest.record_seed(*seed);
        }
        SequenceSpec::Perturbed {
            base,
            noise_d,
            seed,
        } => {
            record_spec(base, manifest);
            manifest.set("noise_d", noise_d).set("noise_seed", seed);
            manifest.record_seed(*seed);
        }
    }
}

// ---------------------------------------------------------------------
// Argument-string helpers
// ---------------------------------------------------------------------

/// Parse an inclusive 1-based site range written "lo..hi".
pub fn parse_index_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::domain(format!("range '{s}' must look like 1..50")))?;
    let lo: usize = a
        .trim()
        .parse()
        .map_err(|_| Error::domain(format!("bad range start '{a}' in '{s}'")))?;
    let hi: usize = b
        .trim()
        .parse()
        .map_err(|_| Error::domain(format!("bad range end '{b}' in '{s}'")))?;
    if lo < 1 || hi < lo {
        return Err(Error::domain(format!(
            "range '{s}' must satisfy 1 <= lo <= hi"
        )));
    }
    Ok((lo, hi))
}

/// Parse an inclusive numeric grid written "start:end:step" (step > 0).
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, end, step] = parts[..] else {
        return Err(Error::domain(format!(
            "grid '{s}' must look like start:end:step"
        )));
    };
    let parse = |txt: &str, what: &str| -> Result<f64> {
        txt.trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad grid {what} '{txt}' in '{s}'")))
    };
    let start = parse(start, "start")?;
    let end = parse(end, "end")?;
    let step = parse(step, "step")?;
    if !(step > 0.0) {
        return Err(Error::domain(format!("grid step must be positive in '{s}'")));
    }
    if end < start {
        return Err(Error::domain(format!(
            "grid end must not precede start in '{s}'"
        )));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|k| start + k as f64 * step).collect();
    if let Some(last) = grid.last_mut() {
        // snap accumulated rounding so the stated endpoint is exact
        if (*last - end).abs() <= step * 1e-6 {
            *last = end;
        }
    }
    Ok(grid)
}

/// Parse a chain section written "first:last" into (n0, length).
pub fn parse_section(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::domain(format!("section '{s}' must look like 415:426")))?;
    let first: usize = a
        .trim()
        .parse()
        .map_err(|_| Error::domain(format!("bad section start '{a}' in '{s}'")))?;
    let last: usize = b
        .trim()
        .parse()
        .map_err(|_| Error::domain(format!("bad section end '{b}' in '{s}'")))?;
    if first < 1 || last < first {
        return Err(Error::domain(format!(
            "section '{s}' must satisfy 1 <= first <= last"
        )));
    }
    Ok((first, last - first + 1))
}

fn join_register(sites: &[usize]) -> String {
    let parts: Vec<String> = sites.iter().map(usize::to_string).collect();
    parts.join("|")
}

fn na_row(alpha: f64) -> Vec<Cell> {
    vec![Cell::Float(alpha), Cell::Na, Cell::Na, Cell::Na]
}

// ---------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------

/// Parse argv and run; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version surface as Err but are not failures
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Map an error to the process exit code: parameter/domain problems are
/// 2, internal failures 1.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_)
        | Error::NotNormalized { .. }
        | Error::SizeGuard { .. }
        | Error::TargetUnattainable { .. } => 2,
        _ => 1,
    }
}

/// Configure the worker pool, then run one parsed invocation.
pub fn execute(cli: Cli) -> Result<()> {
    configure_workers(cli.jobs)?;
    dispatch(&cli.command)
}

fn dispatch(command: &Command) -> Result<()> {
    match command {
        Command::Seq(a) => cmd_seq(a),
        Command::Nu(a) => cmd_nu(a),
        Command::Ipr1(a) => cmd_ipr1(a),
        Command::IprN(a) => cmd_iprn(a),
        Command::Gap(a) => cmd_gap(a),
        Command::GapNoise(a) => cmd_gap_noise(a),
        Command::Broadband(a) => cmd_broadband(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::Hist(a) => cmd_hist(a),
        Command::Scaling(a) => cmd_scaling(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Run(a) => cmd_run(a),
    }
}

static WORKERS: Once = Once::new();

/// Set up sweep parallelism once per process. Dense eigensolves are kept
/// sequential so identical runs produce identical bytes regardless of the
/// worker count; grids parallelize over the rayon pool instead.
fn configure_workers(jobs: Option<usize>) -> Result<()> {
    let requested = match jobs {
        Some(n) => Some(n),
        None => match std::env::var("LOCCHAIN_JOBS") {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                Error::domain(format!("LOCCHAIN_JOBS must be a positive integer, got '{s}'"))
            })?),
            Err(_) => None,
        },
    };
    if requested == Some(0) {
        return Err(Error::domain("--jobs must be at least 1"));
    }
    WORKERS.call_once(|| {
        faer::set_global_parallelism(faer::Par::Seq);
        if let Some(n) = requested {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                // a pool already exists (e.g. under a test harness); the
                // degree differs from the request but results do not
                eprintln!("warning: worker pool already configured ({e})");
            }
        }
    });
    Ok(())
}

// ---------------------------------------------------------------------
// seq
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Site range "lo..hi" (1-based, inclusive).
    #[arg(long, default_value = "1..2000")]
    pub n: String,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the exact integer coefficients of 2*eps_n/h as JSON
    /// (base variant only).
    #[arg(long)]
    pub poly: Option<PathBuf>,
}

fn cmd_seq(args: &SeqArgs) -> Result<()> {
    let spec = args.variant.build()?;
    let (lo, hi) = parse_index_range(&args.n)?;
    if args.poly.is_some() && !matches!(spec, SequenceSpec::Base { .. }) {
        return Err(Error::domain(
            "--poly emits exact base-sequence coefficients; it applies to variant base only",
        ));
    }
    let energies = spec.energies(lo, hi - lo + 1)?;

    let mut manifest = RunManifest::new("seq");
    record_spec(&spec, &mut manifest);
    manifest.set("n", format!("{lo}..{hi}"));

    if let Some(poly_path) = &args.poly {
        #[derive(Serialize)]
        struct SitePoly {
            n: usize,
            /// c_q of 2 eps_n / h = sum_q c_q alpha^q.
            two_eps_over_h_coeffs: Vec<i64>,
        }
        let polys: Vec<SitePoly> = (lo..=hi)
            .map(|n| SitePoly {
                n,
                two_eps_over_h_coeffs: AlphaPolynomial::for_site(n).coeffs().to_vec(),
            })
            .collect();
        output::write_json(poly_path, &mut manifest, &polys)?;
    }

    let rows: Vec<Vec<Cell>> = (lo..=hi)
        .zip(&energies)
        .map(|(n, &e)| vec![Cell::UInt(n as u64), Cell::Float(e)])
        .collect();
    output::write_csv(&args.out, &mut manifest, &["n", "eps_over_h"], &rows)?;
    println!("wrote {} ({} sites)", args.out.display(), rows.len());
    Ok(())
}

// ---------------------------------------------------------------------
// nu
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct NuArgs {
    /// Site range "lo..hi" (1-based, inclusive).
    #[arg(long, default_value = "1..50")]
    pub n: String,
    /// Comparison-window sizes m (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = vec![200u64, 1000])]
    pub m: Vec<u64>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write depth counts h(i) per (n, m) as JSON.
    #[arg(long)]
    pub hcounts: Option<PathBuf>,
}

fn cmd_nu(args: &NuArgs) -> Result<()> {
    let (lo, hi) = parse_index_range(&args.n)?;
    if args.m.is_empty() {
        return Err(Error::domain("--m needs at least one window size"));
    }
    if args.m.contains(&0) {
        return Err(Error::domain("window sizes m must be at least 1"));
    }
    let pairs: Vec<(usize, u64)> = (lo..=hi)
        .flat_map(|n| args.m.iter().map(move |&m| (n, m)))
        .collect();
    let profiles: Vec<LowdegProfile> = pairs
        .par_iter()
        .map(|&(n, m)| LowdegProfile::compute(n, m))
        .collect::<Result<_>>()?;

    let mut manifest = RunManifest::new("nu");
    manifest.set("n", format!("{lo}..{hi}"));
    let m_list: Vec<String> = args.m.iter().map(u64::to_string).collect();
    manifest.set("m", m_list.join(","));

    if let Some(hcounts_path) = &args.hcounts {
        #[derive(Serialize)]
        struct HcountEntry<'a> {
            n: usize,
            m: u64,
            /// h(i) = #{s in [1,m] : lowdeg(eps_{n+s} - eps_n) > i}.
            h: &'a [u64],
        }
        let entries: Vec<HcountEntry> = profiles
            .iter()
            .map(|p| HcountEntry {
                n: p.n,
                m: p.m,
                h: &p.h,
            })
            .collect();
        output::write_json(hcounts_path, &mut manifest, &entries)?;
    }

    let rows: Vec<Vec<Cell>> = profiles
        .iter()
        .map(|p| {
            vec![
                Cell::UInt(p.n as u64),
                Cell::UInt(p.m),
                Cell::UInt(p.lowdeg_sum),
                Cell::Float(p.nu()),
            ]
        })
        .collect();
    output::write_csv(&args.out, &mut manifest, &["n", "m", "lowdeg", "nu"], &rows)?;
    println!("wrote {} ({} (n, m) pairs)", args.out.display(), rows.len());
    Ok(())
}

// ---------------------------------------------------------------------
// ipr1
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct Ipr1Args {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Alpha grid "start:end:step" (inclusive). Grid points outside the
    /// sequence's admissible alpha domain yield NA rows.
    #[arg(long = "alpha-grid", default_value = "0:0.5:0.001")]
    pub alpha_grid: String,
    /// Band splitting over hopping, h/J.
    #[arg(long, default_value_t = 20.0)]
    pub hoverj: f64,
    /// Chain length L.
    #[arg(long = "L", default_value_t = 300)]
    pub length: usize,
    /// First site of the chain (1-based).
    #[arg(long, default_value_t = 1)]
    pub n0: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_ipr1(args: &Ipr1Args) -> Result<()> {
    let spec = args.variant.build_for_sweep()?;
    let grid = parse_grid(&args.alpha_grid)?;
    let template = ChainConfig {
        spec,
        n0: args.n0,
        length: args.length,
        h_over_j: args.hoverj,
        delta: 0.0,
    };
    template.validate()?;

    let rows: Vec<Vec<Cell>> = grid
        .par_iter()
        .map(|&a| -> Result<Vec<Cell>> {
            let swept = template.spec.with_alpha(a);
            if swept.validate().is_err() {
                return Ok(na_row(a));
            }
            let mut cfg = template.clone();
            cfg.spec = swept;
            let spectrum = single_particle::diagonalize(&cfg)?;
            match single_particle::ipr_stats(&spectrum) {
                Ok(st) => Ok(vec![
                    Cell::Float(a),
                    Cell::Float(st.mean),
                    Cell::Float(st.max),
                    Cell::UInt(st.argmax_site as u64),
                ]),
                // a spectrum so degenerate that no state survives the
                // filter is a data condition, not a usage error
                Err(_) => Ok(na_row(a)),
            }
        })
        .collect::<Result<_>>()?;

    let mut manifest = RunManifest::new("ipr1");
    record_spec(&template.spec, &mut manifest);
    manifest
        .set("alpha_grid", &args.alpha_grid)
        .set("hoverj", args.hoverj)
        .set("L", args.length)
        .set("n0", args.n0);
    output::write_csv(
        &args.out,
        &mut manifest,
        &["alpha", "mean_ipr", "max_ipr", "argmax_site"],
        &rows,
    )?;
    println!("wrote {} ({} grid points)", args.out.display(), rows.len());
    Ok(())
}

// ---------------------------------------------------------------------
// iprN
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct IprNArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Alpha grid "start:end:step" (inclusive); inadmissible points
    /// yield NA rows.
    #[arg(long = "alpha-grid", default_value = "0:0.5:0.002")]
    pub alpha_grid: String,
    /// Band splitting over hopping, h/J.
    #[arg(long, default_value_t = 20.0)]
    pub hoverj: f64,
    /// Section length L (number of sites).
    #[arg(long = "L", default_value_t = 12)]
    pub length: usize,
    /// Particle count N.
    #[arg(long = "N", default_value_t = 6)]
    pub particles: usize,
    /// Nearest-neighbour interaction Delta.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// First site of the section (1-based).
    #[arg(long, default_value_t = 1)]
    pub n0: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_iprn(args: &IprNArgs) -> Result<()> {
    let spec = args.variant.build_for_sweep()?;
    let grid = parse_grid(&args.alpha_grid)?;
    let template = ChainConfig {
        spec,
        n0: args.n0,
        length: args.length,
        h_over_j: args.hoverj,
        delta: args.delta,
    };
    template.validate()?;

    let admissible: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|&a| template.spec.with_alpha(a).validate().is_ok())
        .collect();
    let points = many_particle::sector_ipr_scan(&template, args.particles, &admissible)?;

    let mut next = points.iter();
    let rows: Vec<Vec<Cell>> = grid
        .iter()
        .map(|&a| {
            if template.spec.with_alpha(a).validate().is_ok() {
                let p = next
                    .next()
                    .expect("sector scan yields one point per admissible grid value");
                vec![
                    Cell::Float(p.alpha),
                    Cell::Float(p.mean_ipr),
                    Cell::Float(p.max_ipr),
                    Cell::Text(join_register(&p.argmax_register)),
                ]
            } else {
                na_row(a)
            }
        })
        .collect();

    let mut manifest = RunManifest::new("iprN");
    record_spec(&template.spec, &mut manifest);
    manifest
        .set("alpha_grid", &args.alpha_grid)
        .set("hoverj", args.hoverj)
        .set("L", args.length)
        .set("N", args.particles)
        .set("delta", args.delta)
        .set("n0", args.n0);
    output::write_csv(
        &args.out,
        &mut manifest,
        &["alpha", "mean_ipr", "max_ipr", "argmax_register"],
        &rows,
    )?;
    println!("wrote {} ({} grid points)", args.out.display(), rows.len());
    Ok(())
}

// ---------------------------------------------------------------------
// gap
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct GapArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Smallest transition anchor n.
    #[arg(long, default_value_t = DEFAULT_N_RANGE.0)]
    pub nmin: usize,
    /// Largest transition anchor n.
    #[arg(long, default_value_t = DEFAULT_N_RANGE.1)]
    pub nmax: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_gap(args: &GapArgs) -> Result<()> {
    let spec = args.variant.build()?;
    let report = resonance_gap::min_gap(&spec, (args.nmin, args.nmax))?;

    let rows: Vec<Vec<Cell>> = report
        .records
        .iter()
        .zip(&report.gaps_over_h)
        .map(|(r, &gap)| {
            vec![
                Cell::UInt(r.n as u64),
                Cell::UInt(r.k1 as u64),
                Cell::UInt(r.k2 as u64),
                Cell::UInt(r.k3 as u64),
                Cell::UInt(r.k4 as u64),
                Cell::UInt(r.kappa),
                Cell::Text(r.class.to_string()),
                Cell::Float(gap),
            ]
        })
        .collect();

    let mut manifest = RunManifest::new("gap");
    record_spec(&spec, &mut manifest);
    manifest.set("nmin", args.nmin).set("nmax", args.nmax);
    output::write_csv(
        &args.out,
        &mut manifest,
        &["n", "k1", "k2", "k3", "k4", "kappa", "class", "deps_over_h"],
        &rows,
    )?;
    println!(
        "wrote {} ({} transitions, min |d eps|/h = {:.6e} at n = {})",
        args.out.display(),
        rows.len(),
        report.min_gap_over_h,
        report.argmin.n
    );
    Ok(())
}

// ---------------------------------------------------------------------
// gap-noise
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct GapNoiseArgs {
    /// Defaults to the period-6 modified sequence alpha = 0.25,
    /// alpha' = 0.22 when no variant flag is given.
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Error amplitudes as powers of alpha: D = alpha^k per exponent k.
    #[arg(long = "D-exp", value_delimiter = ',', default_values_t = vec![3u32, 4, 5])]
    pub d_exp: Vec<u32>,
    /// Number of error realizations (consumes seeds 0..count-1).
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    /// Smallest transition anchor n.
    #[arg(long, default_value_t = DEFAULT_N_RANGE.0)]
    pub nmin: usize,
    /// Largest transition anchor n.
    #[arg(long, default_value_t = DEFAULT_N_RANGE.1)]
    pub nmax: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_gap_noise(args: &GapNoiseArgs) -> Result<()> {
    if args.variant.noise_d.is_some() {
        return Err(Error::domain(
            "--noise-d does not apply here: gap-noise layers the error model per seed itself",
        ));
    }
    let spec = args.variant.build_or(SequenceSpec::Mod6 {
        alpha: 0.25,
        alpha_prime: 0.22,
    })?;
    let alpha = spec
        .alpha()
        .ok_or_else(|| Error::domain("gap-noise needs an alpha-bearing variant (not random)"))?;
    if args.d_exp.is_empty() {
        return Err(Error::domain("--D-exp needs at least one exponent"));
    }
    if args.seeds == 0 {
        return Err(Error::domain("--seeds must be at least 1"));
    }
    let seeds: Vec<u64> = (0..args.seeds).collect();

    let mut manifest = RunManifest::new("gap-noise");
    record_spec(&spec, &mut manifest);
    let exps: Vec<String> = args.d_exp.iter().map(u32::to_string).collect();
    manifest
        .set("D_exp", exps.join(","))
        .set("seeds", args.seeds)
        .set("nmin", args.nmin)
        .set("nmax", args.nmax);
    for &s in &seeds {
        manifest.record_seed(s);
    }

    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &k in &args.d_exp {
        let stats =
            resonance_gap::gap_ratio(&spec, (args.nmin, args.nmax), alpha.powi(k as i32), &seeds)?;
        for &(seed, r) in &stats.per_seed {
            rows.push(vec![
                Cell::UInt(u64::from(k)),
                Cell::Float(stats.noise_d),
                Cell::UInt(seed),
                Cell::Float(r),
                Cell::Float(stats.mean),
                Cell::Float(stats.stddev),
            ]);
        }
        summary.push(format!("alpha^{k}: mean R = {:.4}", stats.mean));
    }

    output::write_csv(
        &args.out,
        &mut manifest,
        &["d_exp", "d", "seed", "r", "mean", "stddev"],
        &rows,
    )?;
    println!("wrote {} ({})", args.out.display(), summary.join("; "));
    Ok(())
}

// ---------------------------------------------------------------------
// broadband
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct BroadbandArgs {
    /// Defaults to the base sequence at alpha = 0.25 when no variant
    /// flag is given.
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Largest anchor n to scan.
    #[arg(long, default_value_t = 840)]
    pub nmax: usize,
    /// Report pair-shift gaps below this value (units of h; default
    /// 1.5 alpha^4, the scale of the periodically recurring family).
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_broadband(args: &BroadbandArgs) -> Result<()> {
    let spec = args.variant.build_or(SequenceSpec::Base { alpha: 0.25 })?;
    let threshold = match args.threshold {
        Some(t) => t,
        None => {
            let alpha = spec.alpha().ok_or_else(|| {
                Error::domain("--threshold is required for variants without an alpha")
            })?;
            1.5 * alpha.powi(4)
        }
    };
    let hits = resonance_gap::broadband_scan(&spec, args.nmax, threshold)?;

    let rows: Vec<Vec<Cell>> = hits
        .iter()
        .map(|h| {
            vec![
                Cell::UInt(h.n as u64),
                Cell::Float(h.gap_over_h),
                Cell::Bool(h.six_k_minus_one),
            ]
        })
        .collect();

    let mut manifest = RunManifest::new("broadband");
    record_spec(&spec, &mut manifest);
    manifest.set("nmax", args.nmax).set("threshold", threshold);
    output::write_csv(
        &args.out,
        &mut manifest,
        &["n", "gap_over_h", "six_k_minus_one"],
        &rows,
    )?;
    let periodic = hits.iter().filter(|h| h.six_k_minus_one).count();
    println!(
        "wrote {} ({} hits below {:.3e}, {} on the n = 6k-1 comb)",
        args.out.display(),
        rows.len(),
        threshold,
        periodic
    );
    Ok(())
}

// ---------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Band splitting over hopping, h/J.
    #[arg(long, default_value_t = 20.0)]
    pub hoverj: f64,
    /// Nearest-neighbour interaction Delta.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Chain section "first:last" (1-based, inclusive), evolved with
    /// open ends.
    #[arg(long)]
    pub section: String,
    /// Initially occupied sites (comma-separated, inside the section).
    #[arg(long, value_delimiter = ',', required = true)]
    pub register: Vec<usize>,
    /// Final time in units of 1/J.
    #[arg(long, default_value_t = 1e6)]
    pub tmax: f64,
    /// Survival threshold for the reported lifetime.
    #[arg(long, default_value_t = 0.9)]
    pub threshold: f64,
    /// Log-grid resolution.
    #[arg(long = "points-per-decade", default_value_t = dynamics::POINTS_PER_DECADE)]
    pub points_per_decade: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_evolve(args: &EvolveArgs) -> Result<()> {
    let spec = args.variant.build()?;
    let (n0, length) = parse_section(&args.section)?;
    if !(args.threshold > 0.0 && args.threshold < 1.0) {
        return Err(Error::domain("--threshold must lie in (0, 1)"));
    }
    let config = ChainConfig {
        spec,
        n0,
        length,
        h_over_j: args.hoverj,
        delta: args.delta,
    };
    let mut times = vec![0.0];
    times.extend(dynamics::log_time_grid(
        dynamics::T_GRID_START,
        args.tmax,
        args.points_per_decade,
    )?);
    let trace = dynamics::evolve_amplitude(&config, &args.register, &times)?;
    let lifetime = trace.first_below(args.threshold)?;

    let rows: Vec<Vec<Cell>> = trace
        .times
        .iter()
        .zip(&trace.amp_sq)
        .map(|(&t, &a)| vec![Cell::Float(t), Cell::Float(a)])
        .collect();

    let mut manifest = RunManifest::new("evolve");
    record_spec(&config.spec, &mut manifest);
    manifest
        .set("section", &args.section)
        .set("register", join_register(&args.register))
        .set("hoverj", args.hoverj)
        .set("delta", args.delta)
        .set("tmax", args.tmax)
        .set("threshold", args.threshold)
        .set("points_per_decade", args.points_per_decade);
    output::write_csv(&args.out, &mut manifest, &["t", "amp_sq"], &rows)?;

    match lifetime {
        Lifetime::Crossed(t) => println!(
            "wrote {} (|A|^2 first dips below {} at t = {:.3e}/J)",
            args.out.display(),
            args.threshold,
            t
        ),
        Lifetime::ExceedsTMax => println!(
            "wrote {} (|A|^2 stays above {} through t = {:.1e}/J)",
            args.out.display(),
            args.threshold,
            args.tmax
        ),
    }
    Ok(())
}

// ---------------------------------------------------------------------
// hist
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct HistArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Section length L (number of sites).
    #[arg(long = "L", default_value_t = 12)]
    pub length: usize,
    /// Particle count N.
    #[arg(long = "N", default_value_t = 6)]
    pub particles: usize,
    /// Nearest-neighbour interaction Delta.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Band splitting over hopping, h/J (default: 1 for variant random,
    /// whose energies are already in units of J, else 20, which matches
    /// the default disorder bandwidth W = 26 since the engineered
    /// spectrum spans roughly h/(1-alpha)).
    #[arg(long)]
    pub hoverj: Option<f64>,
    /// First site of the section (1-based).
    #[arg(long, default_value_t = 1)]
    pub n0: usize,
    /// Number of sequence realizations (deterministic variants collapse
    /// to one).
    #[arg(long, default_value_t = 200)]
    pub realizations: usize,
    /// Histogram bin edges "start:end:width".
    #[arg(long, default_value = "1:31:0.5")]
    pub bins: String,
    /// Output JSON path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_hist(args: &HistArgs) -> Result<()> {
    let spec = args.variant.build()?;
    let h_over_j = args
        .hoverj
        .unwrap_or(if spec.is_random() { 1.0 } else { 20.0 });
    let edges = parse_grid(&args.bins)?;
    if args.realizations == 0 {
        return Err(Error::domain("--realizations must be at least 1"));
    }
    let template = ChainConfig {
        spec,
        n0: args.n0,
        length: args.length,
        h_over_j,
        delta: args.delta,
    };
    let iprs = many_particle::ensemble_sector_iprs(&template, args.particles, args.realizations)?;
    let hist = many_particle::histogram(&iprs, &edges)?;

    let mut manifest = RunManifest::new("hist");
    record_spec(&template.spec, &mut manifest);
    manifest
        .set("L", args.length)
        .set("N", args.particles)
        .set("delta", args.delta)
        .set("hoverj", h_over_j)
        .set("n0", args.n0)
        .set("realizations", args.realizations)
        .set("bins", &args.bins);
    output::write_json(&args.out, &mut manifest, &hist)?;
    println!(
        "wrote {} ({} eigenstate IPRs, {} above the last bin edge)",
        args.out.display(),
        hist.samples,
        hist.overflow
    );
    Ok(())
}

// ---------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Target mean single-particle IPRs.
    #[arg(long, value_delimiter = ',', default_values_t = vec![95.0, 50.0, 10.0, 2.0, 1.2])]
    pub targets: Vec<f64>,
    /// h/J grid "start:end:step".
    #[arg(long = "hoverj-grid", default_value = "20:100:5")]
    pub hoverj_grid: String,
    /// Chain length L.
    #[arg(long = "L", default_value_t = 300)]
    pub length: usize,
    /// First site of the chain (1-based).
    #[arg(long, default_value_t = 1)]
    pub n0: usize,
    /// Lower edge of the alpha root bracket.
    #[arg(long = "alpha-lo", default_value_t = 1e-6)]
    pub alpha_lo: f64,
    /// Upper edge of the alpha root bracket.
    #[arg(long = "alpha-hi", default_value_t = 0.6)]
    pub alpha_hi: f64,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

fn cmd_scaling(args: &ScalingArgs) -> Result<()> {
    let spec = args.variant.build_for_sweep()?;
    let hs = parse_grid(&args.hoverj_grid)?;
    if args.targets.is_empty() {
        return Err(Error::domain("--targets needs at least one value"));
    }
    let template = ChainConfig {
        spec,
        n0: args.n0,
        length: args.length,
        h_over_j: hs[0],
        delta: 0.0,
    };
    template.validate()?;

    let cells: Vec<(f64, f64)> = args
        .targets
        .iter()
        .flat_map(|&t| hs.iter().map(move |&h| (t, h)))
        .collect();
    let per_cell: Vec<Vec<Vec<Cell>>> = cells
        .par_iter()
        .map(|&(target, h)| -> Result<Vec<Vec<Cell>>> {
            let mut cfg = template.clone();
            cfg.h_over_j = h;
            let na = vec![vec![Cell::Float(target), Cell::Float(h), Cell::Na]];
            match single_particle::alpha_at_fixed_ipr(&cfg, target, args.alpha_lo, args.alpha_hi) {
                Ok(roots) if roots.is_empty() => Ok(na),
                Ok(roots) => Ok(roots
                    .iter()
                    .map(|&a| vec![Cell::Float(target), Cell::Float(h), Cell::Float(a)])
                    .collect()),
                Err(Error::TargetUnattainable { .. }) => Ok(na),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Cell>> = per_cell.into_iter().flatten().collect();

    let mut manifest = RunManifest::new("scaling");
    record_spec(&template.spec, &mut manifest);
    let targets: Vec<String> = args.targets.iter().map(f64::to_string).collect();
    manifest
        .set("targets", targets.join(","))
        .set("hoverj_grid", &args.hoverj_grid)
        .set("L", args.length)
        .set("n0", args.n0)
        .set("alpha_lo", args.alpha_lo)
        .set("alpha_hi", args.alpha_hi);
    output::write_csv(
        &args.out,
        &mut manifest,
        &["target", "h_over_j", "alpha"],
        &rows,
    )?;
    println!("wrote {} ({} rows)", args.out.display(), rows.len());
    Ok(())
}

// ---------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Output CSV path (prints the table to stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn cmd_audit(args: &AuditArgs) -> Result<()> {
    let spec = args.variant.build()?;
    let report = resonance_gap::new_resonance_audit(&spec)?;

    for v in report.violations() {
        eprintln!(
            "warning: {} = {:.6e} sits inside the working gap floor {:.6e}",
            v.label, v.value, v.floor
        );
    }

    if let Some(out) = &args.out {
        let rows: Vec<Vec<Cell>> = report
            .entries
            .iter()
            .map(|e| {
                vec![
                    Cell::Text(e.label.clone()),
                    Cell::Float(e.value),
                    Cell::Float(e.floor),
                    Cell::Bool(e.ok),
                ]
            })
            .collect();
        let mut manifest = RunManifest::new("audit");
        record_spec(&spec, &mut manifest);
        output::write_csv(
            out,
            &mut manifest,
            &["label", "value", "floor", "ok"],
            &rows,
        )?;
        println!(
            "wrote {} ({} combinations, {} violations)",
            out.display(),
            report.entries.len(),
            report.violations().len()
        );
    } else {
        println!("{:<24} {:>20} {:>20} ok", "label", "value", "floor");
        for e in &report.entries {
            println!(
                "{:<24} {:>20} {:>20} {}",
                e.label,
                output::format_sig(e.value),
                output::format_sig(e.floor),
                e.ok
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// run (campaign mode)
// ---------------------------------------------------------------------

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Campaign file: TOML with [[job]] tables; each job carries
    /// cmd = "<subcommand>" plus that subcommand's flags as keys
    /// (underscores may stand in for dashes). The worker count is taken
    /// from the top-level invocation.
    pub config: PathBuf,
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.config)?;
    let doc: toml::Table = text
        .parse()
        .map_err(|e| Error::domain(format!("campaign parse: {e}")))?;
    let jobs = doc
        .get("job")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::domain("campaign needs at least one [[job]] table"))?;
    if jobs.is_empty() {
        return Err(Error::domain("campaign needs at least one [[job]] table"));
    }

    for (i, job) in jobs.iter().enumerate() {
        let table = job
            .as_table()
            .ok_or_else(|| Error::domain(format!("job {i} is not a table")))?;
        let argv = job_argv(table)?;
        let cli = Cli::try_parse_from(&argv)
            .map_err(|e| Error::domain(format!("job {i}: {e}")))?;
        if matches!(cli.command, Command::Run(_)) {
            return Err(Error::domain(format!("job {i}: campaigns cannot nest")));
        }
        println!("[job {i}] {}", argv[1..].join(" "));
        dispatch(&cli.command)?;
    }
    println!("campaign complete: {} jobs", jobs.len());
    Ok(())
}

/// Convert one [[job]] table into the equivalent argv.
fn job_argv(table: &toml::value::Table) -> Result<Vec<String>> {
    let cmd = table
        .get("cmd")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::domain("each [[job]] needs cmd = \"<subcommand>\""))?;
    let mut argv = vec!["locchain".to_string(), cmd.to_string()];
    for (key, value) in table {
        if key == "cmd" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            toml::Value::Boolean(true) => argv.push(flag),
            toml::Value::Boolean(false) => {}
            toml::Value::Array(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(toml_scalar)
                    .collect::<Result<_>>()?;
                argv.push(flag);
                argv.push(parts.join(","));
            }
            v => {
                argv.push(flag);
                argv.push(toml_scalar(v)?);
            }
        }
    }
    Ok(argv)
}

fn toml_scalar(v: &toml::Value) -> Result<String> {
    match v {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(x) => Ok(format!("{x}")),
        toml::Value::Boolean(b) => Ok(b.to_string()),
        _ => Err(Error::domain(
            "campaign values must be scalars or arrays of scalars",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_range_parses_and_validates() {
        assert_eq!(parse_index_range("1..50").unwrap(), (1, 50));
        assert_eq!(parse_index_range(" 7 .. 7 ").unwrap(), (7, 7));
        assert!(parse_index_range("5..2").is_err());
        assert!(parse_index_range("0..3").is_err());
        assert!(parse_index_range("x..y").is_err());
        assert!(parse_index_range("17").is_err());
    }

    #[test]
    fn grid_is_inclusive_with_exact_endpoints() {
        let g = parse_grid("0:0.5:0.001").unwrap();
        assert_eq!(g.len(), 501);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 0.5);
        let h = parse_grid("20:100:5").unwrap();
        assert_eq!(h.len(), 17);
        assert_eq!(h[1], 25.0);
        assert_eq!(*h.last().unwrap(), 100.0);
        assert_eq!(parse_grid("0.3:0.3:0.1").unwrap(), vec![0.3]);
        assert!(parse_grid("1:0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1:-0.1").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("a:b:c").is_err());
    }

    #[test]
    fn section_maps_to_origin_and_length() {
        assert_eq!(parse_section("415:426").unwrap(), (415, 12));
        assert_eq!(parse_section("3:3").unwrap(), (3, 1));
        assert!(parse_section("426:415").is_err());
        assert!(parse_section("0:5").is_err());
        assert!(parse_section("415").is_err());
    }

    #[test]
    fn variant_build_resolves_and_rejects() {
        let base = VariantArgs {
            alpha: Some(0.3),
            ..Default::default()
        };
        assert_eq!(base.build().unwrap(), SequenceSpec::Base { alpha: 0.3 });

        let missing = VariantArgs::default();
        let msg = missing.build().unwrap_err().to_string();
        assert!(msg.contains("--alpha"), "{msg}");

        let stray = VariantArgs {
            alpha: Some(0.3),
            beta: Some(0.1),
            ..Default::default()
        };
        let msg = stray.build().unwrap_err().to_string();
        assert!(msg.contains("--beta"), "{msg}");

        let unknown = VariantArgs {
            variant: Some("mod9".into()),
            ..Default::default()
        };
        assert!(unknown.build().is_err());

        let noisy = VariantArgs {
            alpha: Some(0.25),
            noise_d: Some(0.01),
            seed: Some(3),
            ..Default::default()
        };
        assert_eq!(
            noisy.build().unwrap(),
            SequenceSpec::Base { alpha: 0.25 }.perturbed(0.01, 3)
        );

        let random = VariantArgs {
            variant: Some("random".into()),
            bandwidth_w: Some(26.0),
            ..Default::default()
        };
        assert_eq!(
            random.build().unwrap(),
            SequenceSpec::Random {
                bandwidth_w: 26.0,
                seed: 0
            }
        );
    }

    #[test]
    fn fallback_applies_only_when_nothing_is_set() {
        let fallback = SequenceSpec::Mod6 {
            alpha: 0.25,
            alpha_prime: 0.22,
        };
        assert_eq!(
            VariantArgs::default().build_or(fallback.clone()).unwrap(),
            fallback
        );
        // an explicit half-specified variant is an error, not a fallback
        let explicit = VariantArgs {
            variant: Some("base".into()),
            ..Default::default()
        };
        assert!(explicit.build_or(fallback).is_err());
    }

    #[test]
    fn sweep_builder_defaults_alpha_and_rejects_random() {
        let spec = VariantArgs::default().build_for_sweep().unwrap();
        assert_eq!(spec.alpha(), Some(SWEEP_PLACEHOLDER_ALPHA));
        let random = VariantArgs {
            variant: Some("random".into()),
            bandwidth_w: Some(5.0),
            ..Default::default()
        };
        assert!(random.build_for_sweep().is_err());
    }

    #[test]
    fn campaign_table_becomes_argv() {
        let toml_text = r#"
            cmd = "seq"
            variant = "base"
            alpha = 0.3
            n = "1..50"
            out = "seq.csv"
        "#;
        let table: toml::value::Table = toml_text.parse().unwrap();
        let argv = job_argv(&table).unwrap();
        assert_eq!(argv[0], "locchain");
        assert_eq!(argv[1], "seq");
        // table iteration is ordered, so the argv is deterministic
        assert_eq!(
            argv[2..],
            [
                "--alpha", "0.3", "--n", "1..50", "--out", "seq.csv", "--variant", "base"
            ]
        );
        let cli = Cli::try_parse_from(&argv).unwrap();
        match cli.command {
            Command::Seq(a) => {
                assert_eq!(a.variant.alpha, Some(0.3));
                assert_eq!(a.n, "1..50");
            }
            _ => panic!("parsed into the wrong subcommand"),
        }
    }

    #[test]
    fn campaign_arrays_and_underscores_map_to_flags() {
        let toml_text = r#"
            cmd = "gap-noise"
            D_exp = [3, 4, 5]
            seeds = 10
            out = "r.csv"
        "#;
        let table: toml::value::Table = toml_text.parse().unwrap();
        let argv = job_argv(&table).unwrap();
        assert!(argv.contains(&"--D-exp".to_string()));
        assert!(argv.contains(&"3,4,5".to_string()));
        let cli = Cli::try_parse_from(&argv).unwrap();
        match cli.command {
            Command::GapNoise(a) => assert_eq!(a.d_exp, vec![3, 4, 5]),
            _ => panic!("parsed into the wrong subcommand"),
        }
    }

    #[test]
    fn exit_codes_separate_usage_from_internal() {
        assert_eq!(exit_code(&Error::domain("bad")), 2);
        assert_eq!(
            exit_code(&Error::TargetUnattainable {
                target: 1000.0,
                min: 1.0,
                max: 100.0
            }),
            2
        );
        assert_eq!(exit_code(&Error::Solver("diverged".into())), 1);
        assert_eq!(
            exit_code(&Error::Io(std::io::Error::other("disk"))),
            1
        );
    }

    #[test]
    fn pinned_invocations_parse() {
        for argv in [
            vec![
                "locchain", "seq", "--variant", "base", "--alpha", "0.3", "--n", "1..2000",
                "--out", "seq.csv",
            ],
            vec![
                "locchain", "nu", "--n", "1..50", "--m", "200,1000", "--out", "nu.csv",
            ],
            vec![
                "locchain", "ipr1", "--variant", "base", "--alpha-grid", "0:0.5:0.001",
                "--hoverj", "20", "--L", "300", "--out", "ipr1.csv",
            ],
            vec![
                "locchain", "iprN", "--L", "12", "--N", "6", "--delta", "1", "--hoverj", "20",
                "--alpha-grid", "0:0.5:0.002", "--out", "ipr6.csv",
            ],
            vec![
                "locchain", "gap", "--variant", "mod6", "--alpha", "0.25", "--alphap", "0.22",
                "--nmin", "3", "--nmax", "842", "--out", "gap.csv",
            ],
            vec![
                "locchain", "gap-noise", "--D-exp", "3,4,5", "--seeds", "10", "--out", "r.csv",
            ],
            vec![
                "locchain", "hist", "--variant", "random", "--W", "26", "--realizations",
                "2000", "--out", "hist.json",
            ],
            vec![
                "locchain", "evolve", "--variant", "mod6", "--alpha", "0.25", "--alphap",
                "0.22", "--hoverj", "20", "--delta", "1", "--section", "415:426",
                "--register", "416,419,420,422,423,424", "--tmax", "1e6", "--out",
                "evolve.csv",
            ],
            vec!["locchain", "broadband", "--out", "bb.csv"],
            vec!["locchain", "scaling", "--targets", "95,50,10,2,1.2", "--out", "sc.csv"],
            vec![
                "locchain", "audit", "--variant", "mod6", "--alpha", "0.25", "--alphap",
                "0.22",
            ],
            vec!["locchain", "run", "campaign.toml"],
            vec!["locchain", "--jobs", "2", "seq", "--alpha", "0.3", "--out", "s.csv"],
        ] {
            let parsed = Cli::try_parse_from(&argv);
            assert!(parsed.is_ok(), "{argv:?}: {}", parsed.unwrap_err());
        }
    }

    #[test]
    fn register_flag_splits_on_commas() {
        let cli = Cli::try_parse_from([
            "locchain", "evolve", "--alpha", "0.25", "--section", "415:426", "--register",
            "416,419,420", "--out", "e.csv",
        ])
        .unwrap();
        match cli.command {
            Command::Evolve(a) => assert_eq!(a.register, vec![416, 419, 420]),
            _ => panic!("parsed into the wrong subcommand"),
        }
    }
}
