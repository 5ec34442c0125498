//! Timing and invocation-count runs over built-in families.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use cogcomp_core::compress::compress_with_stats;
use cogcomp_core::{reconstruct_with_stats, GroupAction, LiftPolicy, OpCounts};

use crate::fixtures;

/// Exponent bounds for wall time against group order, before slack.
pub const COMPRESS_EXPONENT_BOUND: f64 = 1.0;
pub const RECONSTRUCT_EXPONENT_BOUND: f64 = 2.0;
pub const EXPONENT_SLACK: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// C_k rotating a `4k`-cycle.
    Cycle,
    /// D_m on a `4m`-cycle, group order `k = 2m`.
    DihedralCycle,
    /// C_k rotating the cone over a `4k`-cycle.
    SimplexRotation,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::DihedralCycle => "dihedral-cycle",
            Family::SimplexRotation => "simplex-rotation",
        }
    }

    /// The family member with group order `k`, if there is one.
    pub fn member(self, k: u32) -> Option<GroupAction> {
        match self {
            Family::Cycle if k >= 1 => Some(fixtures::cyclic_cycle(k)),
            Family::DihedralCycle if k >= 4 && k.is_multiple_of(2) => {
                Some(fixtures::dihedral_cycle(k / 2))
            }
            Family::SimplexRotation if k >= 1 => Some(fixtures::cone_rotation(k)),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cycle" => Ok(Family::Cycle),
            "dihedral-cycle" => Ok(Family::DihedralCycle),
            "simplex-rotation" => Ok(Family::SimplexRotation),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub k: usize,
    pub n: usize,
    pub simplices: usize,
    pub quotient_simplices: usize,
    /// Largest orbit.
    pub f: usize,
    /// Largest stabilizer.
    pub h: usize,
    pub threads: usize,
    pub compress_ms: f64,
    pub reconstruct_ms: f64,
    pub compress_prod: u64,
    pub compress_inv: u64,
    pub compress_minrep: u64,
    pub compress_orb: u64,
    pub compress_stab: u64,
    pub compress_trans: u64,
    pub reconstruct_prod: u64,
    pub reconstruct_inv: u64,
    pub reconstruct_minrep: u64,
    pub reconstruct_orb: u64,
    pub reconstruct_stab: u64,
    pub reconstruct_trans: u64,
}

impl BenchRecord {
    pub fn compress_ops(&self) -> OpCounts {
        OpCounts {
            prod: self.compress_prod,
            inv: self.compress_inv,
            minrep: self.compress_minrep,
            orb: self.compress_orb,
            stab: self.compress_stab,
            trans: self.compress_trans,
        }
    }

    pub fn reconstruct_ops(&self) -> OpCounts {
        OpCounts {
            prod: self.reconstruct_prod,
            inv: self.reconstruct_inv,
            minrep: self.reconstruct_minrep,
            orb: self.reconstruct_orb,
            stab: self.reconstruct_stab,
            trans: self.reconstruct_trans,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthFit {
    pub family: String,
    pub threads: usize,
    pub algorithm: &'static str,
    pub exponent: f64,
    pub bound: f64,
}

impl GrowthFit {
    pub fn within_bound(&self) -> bool {
        self.exponent <= self.bound + EXPONENT_SLACK
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub fits: Vec<GrowthFit>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: Family,
    pub orders: Vec<u32>,
    pub threads: Vec<usize>,
    pub repeats: usize,
    pub policy: LiftPolicy,
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

/// Milliseconds, rounded to the microsecond.
fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn sum_ops(ops: &[OpCounts]) -> OpCounts {
    ops.iter().fold(OpCounts::default(), |acc, &o| OpCounts {
        prod: acc.prod + o.prod,
        inv: acc.inv + o.inv,
        minrep: acc.minrep + o.minrep,
        orb: acc.orb + o.orb,
        stab: acc.stab + o.stab,
        trans: acc.trans + o.trans,
    })
}

/// Measures one action. Counts come from the first repeat; times are
/// medians over all repeats.
pub fn measure(
    family: &str,
    action: &GroupAction,
    threads: usize,
    repeats: usize,
    policy: LiftPolicy,
) -> Result<BenchRecord, String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| {
        let repeats = repeats.max(1);
        let mut ctimes = Vec::with_capacity(repeats);
        let mut rtimes = Vec::with_capacity(repeats);
        let mut first = None;
        for _ in 0..repeats {
            let t0 = Instant::now();
            let (t, _, cstats) = compress_with_stats(action, policy).map_err(|e| e.to_string())?;
            ctimes.push(t0.elapsed());
            let t1 = Instant::now();
            let (_, rstats) = reconstruct_with_stats(&t).map_err(|e| e.to_string())?;
            rtimes.push(t1.elapsed());
            if first.is_none() {
                first = Some((t, cstats.total(), sum_ops(&rstats.ops)));
            }
        }
        let (t, c, r) = first.expect("at least one repeat");
        let x = action.complex();
        let k = action.group().order();
        let h = t.stabilizers().iter().map(|s| s.order()).max().unwrap_or(1);
        let f = x.ids().map(|s| action.orb(s).len()).max().unwrap_or(1);
        Ok(BenchRecord {
            family: family.to_string(),
            k,
            n: x.dimension(),
            simplices: x.len(),
            quotient_simplices: t.quotient().len(),
            f,
            h,
            threads,
            compress_ms: ms(median(ctimes)),
            reconstruct_ms: ms(median(rtimes)),
            compress_prod: c.prod,
            compress_inv: c.inv,
            compress_minrep: c.minrep,
            compress_orb: c.orb,
            compress_stab: c.stab,
            compress_trans: c.trans,
            reconstruct_prod: r.prod,
            reconstruct_inv: r.inv,
            reconstruct_minrep: r.minrep,
            reconstruct_orb: r.orb,
            reconstruct_stab: r.stab,
            reconstruct_trans: r.trans,
        })
    })
}

/// Least-squares slope of `ln y` against `ln x`. Needs two distinct `x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (pts.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}

fn fits_for(records: &[BenchRecord]) -> Vec<GrowthFit> {
    let mut threads: Vec<usize> = records.iter().map(|r| r.threads).collect();
    threads.sort_unstable();
    threads.dedup();
    let mut out = Vec::new();
    for w in threads {
        let rows: Vec<&BenchRecord> = records.iter().filter(|r| r.threads == w).collect();
        let family = rows.first().map(|r| r.family.clone()).unwrap_or_default();
        for (algorithm, bound, pick) in [
            (
                "compress",
                COMPRESS_EXPONENT_BOUND,
                (|r: &BenchRecord| r.compress_ms) as fn(&BenchRecord) -> f64,
            ),
            (
                "reconstruct",
                RECONSTRUCT_EXPONENT_BOUND,
                |r: &BenchRecord| r.reconstruct_ms,
            ),
        ] {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.k as f64, pick(r))).collect();
            if let Some(exponent) = fit_exponent(&pts) {
                out.push(GrowthFit {
                    family: family.clone(),
                    threads: w,
                    algorithm,
                    exponent,
                    bound,
                });
            }
        }
    }
    out
}

/// Runs every order under every worker count. Orders with no family member
/// are reported as errors.
pub fn run(config: &BenchConfig) -> Result<BenchReport, String> {
    let mut records = Vec::new();
    for &w in &config.threads {
        for &k in &config.orders {
            let action = config
                .family
                .member(k)
                .ok_or_else(|| format!("family {} has no member of order {k}", config.family))?;
            records.push(measure(
                config.family.name(),
                &action,
                w,
                config.repeats,
                config.policy,
            )?);
        }
    }
    let fits = fits_for(&records);
    Ok(BenchReport { records, fits })
}

/// CSV rows followed by one `# growth_exponent` comment line per fit.
pub fn to_csv(report: &BenchReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.records {
        w.serialize(r).expect("records serialize");
    }
    let mut s = String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8");
    for fit in &report.fits {
        s.push_str(&format!(
            "# growth_exponent family={} threads={} algorithm={} exponent={:.3} bound={:.1} slack={:.1} within_bound={}\n",
            fit.family,
            fit.threads,
            fit.algorithm,
            fit.exponent,
            fit.bound,
            EXPONENT_SLACK,
            fit.within_bound()
        ));
    }
    s
}
