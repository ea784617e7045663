//! Threshold temperatures.
//!
//! For a site pair the threshold is the last temperature at which the
//! concurrence is still above [`ENTANGLEMENT_EPS`]. For the whole lattice it
//! is the temperature below which the ground-state population exceeds
//! 2^(-G), i.e. the solution of Z̃(kT) = 2^G. Since G only bounds the global
//! robustness from below, that temperature is a guaranteed-entanglement lower
//! bound.

use serde::{Deserialize, Serialize};

use crate::bipartite::{concurrence, partial_trace_pair, ENTANGLEMENT_EPS};
use crate::error::{invalid, Result};
use crate::hamiltonian::Spectrum;
use crate::thermal::{make_ensemble, shifted_partition_sum};

/// Lowest temperature of the coarse scan, in units of J.
pub const SCAN_MIN_KT: f64 = 1e-3;
/// Geometric entanglement at or below this counts as a product state.
pub const GE_ZERO: f64 = 1e-9;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdKind {
    PairEf { i: usize, j: usize },
    Multipartite,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdFlags {
    pub never_entangled: bool,
    pub entangled_beyond_scan: bool,
    /// Separable at kT → 0 yet entangled somewhere inside the scan.
    pub reentrant: bool,
}

impl ThresholdFlags {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.never_entangled {
            out.push("never_entangled");
        }
        if self.entangled_beyond_scan {
            out.push("entangled_beyond_scan");
        }
        if self.reentrant {
            out.push("reentrant");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub kind: ThresholdKind,
    /// Field of the originating spectrum, NaN when unknown.
    pub lambda: f64,
    pub t_th: f64,
    /// Width of the final bracketing interval.
    pub bracket: f64,
    pub flags: ThresholdFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    pub scan_max: f64,
    pub scan_points: usize,
    pub tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { scan_max: 50.0, scan_points: 64, tol: 1e-6 }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.scan_max > SCAN_MIN_KT) || !self.scan_max.is_finite() {
            return invalid(format!("scan_max must exceed {SCAN_MIN_KT}, got {}", self.scan_max));
        }
        if self.scan_points < 2 {
            return invalid("scan_points must be >= 2");
        }
        if !(self.tol > 0.0) {
            return invalid(format!("threshold tolerance must be > 0, got {}", self.tol));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let ratio = (self.scan_max / SCAN_MIN_KT).ln();
        let last = (self.scan_points - 1) as f64;
        (0..self.scan_points)
            .map(
                |k| {
                    if k + 1 == self.scan_points {
                        self.scan_max
                    } else {
                        SCAN_MIN_KT * (ratio * k as f64 / last).exp()
                    }
                },
            )
            .collect()
    }
}

/// Bisects on `[lo, hi]` where `inside(lo)` holds and `inside(hi)` does not,
/// until the interval is narrower than `tol` and `done(lo, hi)` agrees.
fn bisect(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    mut inside: impl FnMut(f64) -> Result<bool>,
    mut done: impl FnMut(f64, f64) -> bool,
) -> Result<(f64, f64)> {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol && done(lo, hi) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn origin_lambda(spectrum: &Spectrum) -> f64 {
    spectrum.origin.map_or(f64::NAN, |s| s.lambda)
}

/// Concurrence of pair (i, j) at temperature `kt`.
pub fn pair_concurrence(spectrum: &Spectrum, i: usize, j: usize, kt: f64) -> Result<f64> {
    let ens = make_ensemble(spectrum, kt)?;
    concurrence(&partial_trace_pair(spectrum, &ens, i, j)?)
}

/// Threshold temperature of the pair (i, j).
///
/// If the pair is separable at kT = 0 the result is flagged `never_entangled`
/// with t_th = 0, even if entanglement reappears at higher temperature (that
/// case additionally sets `reentrant`). Otherwise the last crossing found by
/// a geometric scan is refined by bisection.
pub fn threshold_pair(spectrum: &Spectrum, i: usize, j: usize, cfg: &ScanConfig) -> Result<ThresholdResult> {
    cfg.validate()?;
    let entangled = |kt: f64| pair_concurrence(spectrum, i, j, kt).map(|c| c > ENTANGLEMENT_EPS);
    let mut result = ThresholdResult {
        kind: ThresholdKind::PairEf { i: i.min(j), j: i.max(j) },
        lambda: origin_lambda(spectrum),
        t_th: 0.0,
        bracket: 0.0,
        flags: ThresholdFlags::default(),
    };

    let grid = cfg.grid();
    let scan: Vec<bool> = grid.iter().map(|&kt| entangled(kt)).collect::<Result<_>>()?;

    if !entangled(0.0)? {
        result.flags.never_entangled = true;
        result.flags.reentrant = scan.iter().any(|&e| e);
        return Ok(result);
    }
    if *scan.last().unwrap() {
        result.flags.entangled_beyond_scan = true;
        result.t_th = cfg.scan_max;
        return Ok(result);
    }
    let (lo, hi) = match scan.iter().rposition(|&e| e) {
        Some(k) => (grid[k], grid[k + 1]),
        None => (0.0, grid[0]),
    };
    let (lo, hi) = bisect(lo, hi, cfg.tol, entangled, |_, _| true)?;
    result.t_th = 0.5 * (lo + hi);
    result.bracket = hi - lo;
    Ok(result)
}

/// Lower bound on the lattice threshold temperature from the ground-state
/// geometric entanglement `g`: solves Z̃(kT) = 2^g.
pub fn threshold_multipartite(spectrum: &Spectrum, g: f64, tol: f64) -> Result<ThresholdResult> {
    if !(0.0..1.0).contains(&g) {
        return invalid(format!("geometric entanglement must lie in [0,1), got {g}"));
    }
    if !(tol > 0.0) {
        return invalid(format!("threshold tolerance must be > 0, got {tol}"));
    }
    let mut result = ThresholdResult {
        kind: ThresholdKind::Multipartite,
        lambda: origin_lambda(spectrum),
        t_th: 0.0,
        bracket: 0.0,
        flags: ThresholdFlags::default(),
    };
    let target = g.exp2();
    if g <= GE_ZERO || target <= spectrum.ground_degeneracy as f64 {
        result.flags.never_entangled = true;
        return Ok(result);
    }

    let mut hi = 1.0;
    while shifted_partition_sum(spectrum, hi) < target {
        hi *= 2.0;
        if hi > 1e12 {
            return invalid("partition sum never reaches 2^G; spectrum dimension too small");
        }
    }
    let z = |kt: f64| shifted_partition_sum(spectrum, kt);
    let (lo, hi) =
        bisect(0.0, hi, tol, |kt| Ok(z(kt) < target), |lo, hi| (z(0.5 * (lo + hi)) - target).abs() <= 1e-6 * target)?;
    result.t_th = 0.5 * (lo + hi);
    result.bracket = hi - lo;
    Ok(result)
}
