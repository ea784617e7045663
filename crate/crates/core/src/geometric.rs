//! Geometric entanglement G(ψ) = 1 - max_φ |⟨ψ|φ⟩|² over real product states.
//!
//! The search has two stages. First, uniform random draws of the single-site
//! amplitudes P_i ∈ [0,1], with each site in P|0⟩ + √(1-P²)|1⟩. Second, the
//! best draws are polished by alternating single-site maximization: with all
//! other sites frozen, the optimal state of one site is the normalized
//! contraction of ψ against them, and the overlap equals that contraction's
//! norm. The update can produce a negative |0⟩ amplitude, which the plain
//! [0,1] ansatz cannot express; such sites carry a sign flag.
//!
//! Draws come from ChaCha8 keyed by the seed, one stream per block of
//! [`SAMPLE_BLOCK`] samples, so results do not depend on the thread count and
//! a larger `samples` extends the same sequence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{invalid, Result};

pub const SAMPLE_BLOCK: usize = 4096;
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha), stream = 4096-sample block index";

/// Single-site amplitudes of a real product state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductParams {
    /// |P_i| ∈ [0,1].
    pub p: Vec<f64>,
    /// Sites whose |0⟩ amplitude is -|P_i|.
    pub negative: Vec<bool>,
}

impl ProductParams {
    pub fn from_amplitudes(p: Vec<f64>) -> Self {
        let negative = vec![false; p.len()];
        ProductParams { p, negative }
    }

    pub fn n_sites(&self) -> usize {
        self.p.len()
    }

    pub fn sign_flag_used(&self) -> bool {
        self.negative.iter().any(|&n| n)
    }

    /// Site state as (⟨0|φ_i⟩, ⟨1|φ_i⟩).
    fn site_vector(&self, site: usize) -> [f64; 2] {
        let p = self.p[site].clamp(0.0, 1.0);
        let q = (1.0 - p * p).max(0.0).sqrt();
        if self.negative[site] {
            [-p, q]
        } else {
            [p, q]
        }
    }

    fn from_site_vectors(vectors: &[[f64; 2]]) -> Self {
        let mut p = Vec::with_capacity(vectors.len());
        let mut negative = Vec::with_capacity(vectors.len());
        for v in vectors {
            // Overall per-site sign only flips the global phase.
            let [a, _] = if v[1] < 0.0 { [-v[0], -v[1]] } else { *v };
            p.push(a.abs().min(1.0));
            negative.push(a < 0.0);
        }
        ProductParams { p, negative }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeSearchConfig {
    pub samples: usize,
    pub refine_iters: usize,
    pub refine_top: usize,
    pub seed: u64,
    pub conv_tol: f64,
}

impl Default for GeSearchConfig {
    fn default() -> Self {
        GeSearchConfig { samples: 200_000, refine_iters: 200, refine_top: 16, seed: 0, conv_tol: 1e-12 }
    }
}

impl GeSearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return invalid("ge samples must be >= 1");
        }
        if !(self.conv_tol >= 0.0) {
            return invalid(format!("ge conv_tol must be >= 0, got {}", self.conv_tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeResult {
    pub g: f64,
    /// Best overlap Λ found; G = 1 - Λ².
    pub overlap: f64,
    pub best: ProductParams,
    /// Best overlap before refinement.
    pub sampled_overlap: f64,
}

fn n_sites_of(psi: &[f64]) -> Result<usize> {
    if psi.is_empty() || !psi.len().is_power_of_two() {
        return invalid(format!("state length {} is not a power of two", psi.len()));
    }
    Ok(psi.len().trailing_zeros() as usize)
}

/// Contracts ψ against a product state site by site, most significant
/// (site 1) first. Returns the signed amplitude ⟨φ|ψ⟩.
fn contract(psi: &[f64], sites: &[[f64; 2]], scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    scratch.extend_from_slice(psi);
    let mut len = psi.len();
    for c in sites {
        len /= 2;
        for r in 0..len {
            scratch[r] = c[0] * scratch[r] + c[1] * scratch[len + r];
        }
    }
    scratch[0]
}

/// |⟨ψ|φ⟩| for the product state described by `params`.
pub fn overlap(psi: &[f64], params: &ProductParams) -> Result<f64> {
    let n = n_sites_of(psi)?;
    if params.n_sites() != n {
        return invalid(format!("{} product parameters for a {n}-site state", params.n_sites()));
    }
    let sites: Vec<[f64; 2]> = (0..n).map(|s| params.site_vector(s)).collect();
    Ok(contract(psi, &sites, &mut Vec::with_capacity(psi.len())).abs())
}

#[derive(Debug, Clone)]
struct Candidate {
    overlap: f64,
    index: usize,
    p: Vec<f64>,
}

fn better(a: &Candidate, b: &Candidate) -> Ordering {
    b.overlap.total_cmp(&a.overlap).then(a.index.cmp(&b.index))
}

fn sample_block(psi: &[f64], n: usize, seed: u64, block: usize, count: usize, keep: usize) -> Vec<Candidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block as u64);
    let mut scratch = Vec::with_capacity(psi.len());
    let mut sites = vec![[0.0; 2]; n];
    let mut p = vec![0.0; n];
    let mut top: Vec<Candidate> = Vec::with_capacity(keep + 1);
    for k in 0..count {
        for s in 0..n {
            let x: f64 = rng.gen();
            p[s] = x;
            sites[s] = [x, (1.0 - x * x).sqrt()];
        }
        let ov = contract(psi, &sites, &mut scratch).abs();
        if top.len() < keep || ov > top[top.len() - 1].overlap {
            let cand = Candidate { overlap: ov, index: block * SAMPLE_BLOCK + k, p: p.clone() };
            let pos = top.partition_point(|c| better(c, &cand) == Ordering::Less);
            top.insert(pos, cand);
            top.truncate(keep);
        }
    }
    top
}

/// Best `keep` uniform draws, ordered by overlap (ties: lowest draw index).
fn sample_candidates(psi: &[f64], n: usize, cfg: &GeSearchConfig, keep: usize) -> Vec<Candidate> {
    let blocks = cfg.samples.div_ceil(SAMPLE_BLOCK);
    let mut all: Vec<Candidate> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|b| {
            let count = SAMPLE_BLOCK.min(cfg.samples - b * SAMPLE_BLOCK);
            sample_block(psi, n, cfg.seed, b, count, keep)
        })
        .collect();
    all.sort_by(better);
    all.truncate(keep);
    all
}

/// Outcome of alternating single-site refinement.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub params: ProductParams,
    pub overlap: f64,
    /// Overlap after every single-site update, in order.
    pub history: Vec<f64>,
}

/// Alternating maximization of |⟨ψ|φ⟩| starting from `start`. Stops after
/// `max_sweeps` full sweeps or when a sweep gains less than `conv_tol`.
pub fn refine_product(psi: &[f64], start: &ProductParams, max_sweeps: usize, conv_tol: f64) -> Result<Refinement> {
    let n = n_sites_of(psi)?;
    if start.n_sites() != n {
        return invalid(format!("{} product parameters for a {n}-site state", start.n_sites()));
    }
    let mut sites: Vec<[f64; 2]> = (0..n).map(|s| start.site_vector(s)).collect();
    let mut current = contract(psi, &sites, &mut Vec::new()).abs();
    let mut history = Vec::new();
    for _ in 0..max_sweeps {
        let before = current;
        for s in 0..n {
            let env = environment(psi, n, &sites, s);
            let norm = env[0].hypot(env[1]);
            if norm == 0.0 {
                continue;
            }
            sites[s] = [env[0] / norm, env[1] / norm];
            current = norm;
            history.push(current);
        }
        if current - before < conv_tol {
            break;
        }
    }
    Ok(Refinement { params: ProductParams::from_site_vectors(&sites), overlap: current, history })
}

/// Contraction of ψ with every site except `free`, as a 2-vector indexed by
/// the free site's spin.
fn environment(psi: &[f64], n: usize, sites: &[[f64; 2]], free: usize) -> [f64; 2] {
    let mut env = [0.0; 2];
    for (b, &amp) in psi.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let mut coef = amp;
        for (s, c) in sites.iter().enumerate() {
            if s != free {
                coef *= c[(b >> (n - 1 - s)) & 1];
            }
        }
        env[(b >> (n - 1 - free)) & 1] += coef;
    }
    env
}

/// Estimates G(ψ) for a normalized real state of 2^n amplitudes.
///
/// The returned overlap is the best found, so G is an upper estimate of the
/// true geometric entanglement. With `refine_iters = 0` this is plain random
/// sampling over the [0,1] ansatz.
pub fn geometric_entanglement(psi: &[f64], cfg: &GeSearchConfig) -> Result<GeResult> {
    cfg.validate()?;
    let n = n_sites_of(psi)?;
    let norm: f64 = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return invalid(format!("state is not normalized (norm {norm})"));
    }

    let keep = cfg.refine_top.max(1);
    let candidates = sample_candidates(psi, n, cfg, keep);
    let sampled = &candidates[0];
    let mut best = (sampled.overlap, ProductParams::from_amplitudes(sampled.p.clone()));

    if cfg.refine_iters > 0 && cfg.refine_top > 0 {
        let refined: Vec<Refinement> = candidates
            .par_iter()
            .map(|c| refine_product(psi, &ProductParams::from_amplitudes(c.p.clone()), cfg.refine_iters, cfg.conv_tol))
            .collect::<Result<_>>()?;
        for r in refined {
            if r.overlap > best.0 {
                best = (r.overlap, r.params);
            }
        }
    }

    let overlap = best.0.min(1.0);
    Ok(GeResult { g: (1.0 - overlap * overlap).max(0.0), overlap, best: best.1, sampled_overlap: sampled.overlap })
}
