//! The two 7-site geometries: an open chain and the triangular spin star.
//!
//! Sites are numbered 1..=7 everywhere in the public interface. On the star,
//! site 4 is the central spin and the outer ring runs 1-2-5-7-6-3-1, so that
//! (1,2) and (1,4) are nearest neighbours, (1,5) is next-nearest and (1,7) is
//! the diametrically opposite ring site.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub const N_SITES: usize = 7;
pub const STAR_CENTER: usize = 4;

const STAR_RING: [(usize, usize); 6] = [(1, 2), (2, 5), (5, 7), (6, 7), (3, 6), (1, 3)];
const STAR_SPOKES: [(usize, usize); 6] = [(1, 4), (2, 4), (3, 4), (4, 5), (4, 6), (4, 7)];
/// Ring cycle order used for the rotation symmetry.
const STAR_CYCLE: [usize; 6] = [1, 2, 5, 7, 6, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Chain7,
    Star7,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeKind::Chain7 => f.write_str("chain7"),
            LatticeKind::Star7 => f.write_str("star7"),
        }
    }
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "chain7" | "chain" => Ok(LatticeKind::Chain7),
            "star7" | "star" => Ok(LatticeKind::Star7),
            other => invalid(format!("unknown lattice `{other}` (expected chain7 or star7)")),
        }
    }
}

/// A coupled site pair with its exchange coupling in units of J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub coupling: f64,
}

/// Model parameters for one Hamiltonian: geometry, impurity strength,
/// anisotropy and dimensionless field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub alpha: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, gamma: f64, lambda: f64) -> Self {
        LatticeSpec { kind, alpha: 0.0, gamma, lambda }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(0.0..=1.0).contains(&self.gamma) {
            problems.push(format!("gamma must lie in [0,1], got {}", self.gamma));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            problems.push(format!("lambda must be finite and >= 0, got {}", self.lambda));
        }
        if !(self.alpha > -1.0) || !self.alpha.is_finite() {
            problems.push(format!("alpha must be finite and > -1, got {}", self.alpha));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            invalid(problems.join("; "))
        }
    }
}

/// Edge list of a lattice plus any warning raised while building it.
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    pub kind: LatticeKind,
    pub edges: Vec<Edge>,
    pub warning: Option<String>,
}

/// Builds the canonically ordered edge list of `kind`.
///
/// On the star the six spokes touching the central site carry coupling
/// `1 + alpha`. The chain has no central site, so a non-zero `alpha` is
/// ignored and reported through [`Lattice::warning`].
pub fn build_edges(kind: LatticeKind, alpha: f64) -> Result<Lattice> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return invalid(format!("impurity strength alpha must be > -1, got {alpha}"));
    }
    let (mut edges, warning) = match kind {
        LatticeKind::Chain7 => {
            let edges = (1..N_SITES).map(|i| Edge { i, j: i + 1, coupling: 1.0 }).collect();
            let warning =
                (alpha != 0.0).then(|| format!("alpha = {alpha} ignored: chain7 has no central impurity site"));
            (edges, warning)
        }
        LatticeKind::Star7 => {
            let ring = STAR_RING.iter().map(|&(i, j)| Edge { i, j, coupling: 1.0 });
            let spokes = STAR_SPOKES.iter().map(|&(i, j)| Edge { i, j, coupling: 1.0 + alpha });
            (ring.chain(spokes).collect::<Vec<_>>(), None)
        }
    };
    edges.sort_by_key(|a| (a.i, a.j));
    Ok(Lattice { kind, edges, warning })
}

impl Lattice {
    pub fn degree(&self, site: usize) -> usize {
        self.edges.iter().filter(|e| e.i == site || e.j == site).count()
    }

    /// Graph distance between two sites, optionally with one site removed.
    /// Returns `None` when the sites are disconnected.
    pub fn distance(&self, from: usize, to: usize, excluding: Option<usize>) -> Option<usize> {
        let mut dist = [usize::MAX; N_SITES + 1];
        let mut queue = VecDeque::from([from]);
        dist[from] = 0;
        while let Some(s) = queue.pop_front() {
            for e in &self.edges {
                let next = if e.i == s {
                    e.j
                } else if e.j == s {
                    e.i
                } else {
                    continue;
                };
                if Some(next) == excluding || dist[next] != usize::MAX {
                    continue;
                }
                dist[next] = dist[s] + 1;
                queue.push_back(next);
            }
        }
        (dist[to] != usize::MAX).then_some(dist[to])
    }
}

/// Site permutation (1-based, index 0 unused) rotating the star's outer ring
/// by one step: 1→2→5→7→6→3→1, centre fixed. `None` for the chain.
pub fn ring_rotation(kind: LatticeKind) -> Option<[usize; N_SITES + 1]> {
    match kind {
        LatticeKind::Chain7 => None,
        LatticeKind::Star7 => {
            let mut perm = [0, 1, 2, 3, 4, 5, 6, 7];
            for k in 0..STAR_CYCLE.len() {
                perm[STAR_CYCLE[k]] = STAR_CYCLE[(k + 1) % STAR_CYCLE.len()];
            }
            Some(perm)
        }
    }
}
