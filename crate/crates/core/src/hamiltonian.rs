//! XY Hamiltonian in the σᶻ product basis and its exact diagonalization.
//!
//! Basis convention: site 1 is the most significant qubit, so for an
//! `n`-site system basis state `b` has site `i` in state `(b >> (n - i)) & 1`,
//! where bit 0 is |0⟩, the σᶻ = +1 eigenstate.

use serde::{Deserialize, Serialize};

use crate::eigen::symmetric_eigen;
use crate::error::{invalid, Error, Result};
use crate::lattice::{build_edges, Edge, LatticeSpec, N_SITES};

/// Hilbert-space dimension of the 7-site lattices.
pub const DIM: usize = 1 << N_SITES;

/// Relative tolerance used to group degenerate levels.
pub const DEFAULT_DEG_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseSymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    /// Wraps row-major storage, checking symmetry to 1e-12 and finiteness.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return invalid(format!("expected {} entries, got {}", dim * dim, data.len()));
        }
        let m = DenseSymMatrix { dim, data };
        if m.data.iter().any(|x| !x.is_finite()) {
            return invalid("matrix has non-finite entries");
        }
        let asym = m.asymmetry();
        if asym > 1e-12 {
            return invalid(format!("matrix is not symmetric (max |a_ij - a_ji| = {asym:e})"));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    fn add(&mut self, r: usize, c: usize, x: f64) {
        self.data[r * self.dim + c] += x;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..r {
                worst = worst.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.data.chunks_exact(self.dim).map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn max_abs_diff(&self, other: &DenseSymMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Adds `w · v vᵀ`.
    pub fn add_outer(&mut self, w: f64, v: &[f64]) {
        for r in 0..self.dim {
            let wr = w * v[r];
            if wr == 0.0 {
                continue;
            }
            let row = &mut self.data[r * self.dim..(r + 1) * self.dim];
            for (x, vc) in row.iter_mut().zip(v) {
                *x += wr * vc;
            }
        }
    }
}

#[inline]
pub(crate) fn site_shift(n_sites: usize, site: usize) -> usize {
    n_sites - site
}

/// Builds the XY Hamiltonian for an arbitrary small edge list on `n_sites`
/// spins. `field` may be negative.
///
/// H = -(1+γ)/2 Σ J_ij σˣσˣ - (1-γ)/2 Σ J_ij σʸσʸ - field Σ σᶻ
pub fn build_xy_hamiltonian(n_sites: usize, edges: &[Edge], gamma: f64, field: f64) -> DenseSymMatrix {
    let dim = 1usize << n_sites;
    let mut h = DenseSymMatrix::zeros(dim);
    for b in 0..dim {
        let magnetization = n_sites as f64 - 2.0 * b.count_ones() as f64;
        h.add(b, b, -field * magnetization);
        for e in edges {
            let si = site_shift(n_sites, e.i);
            let sj = site_shift(n_sites, e.j);
            let flipped = b ^ (1 << si) ^ (1 << sj);
            // σʸσʸ flips both spins with amplitude (i·s_i)(i·s_j) = -s_i s_j,
            // s = +1 on |0⟩ and -1 on |1⟩.
            let aligned = ((b >> si) & 1) == ((b >> sj) & 1);
            let yy = if aligned { -1.0 } else { 1.0 };
            let amp = -0.5 * (1.0 + gamma) * e.coupling - 0.5 * (1.0 - gamma) * e.coupling * yy;
            h.add(flipped, b, amp);
        }
    }
    h
}

/// Hamiltonian of one 7-site lattice configuration.
pub fn build_hamiltonian(spec: &LatticeSpec) -> Result<DenseSymMatrix> {
    spec.validate()?;
    let lattice = build_edges(spec.kind, spec.alpha)?;
    Ok(build_xy_hamiltonian(N_SITES, &lattice.edges, spec.gamma, spec.lambda))
}

/// Ascending eigenvalues and orthonormal eigenvectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    /// Row-major `dim×dim`; column `k` is the eigenvector of `energies[k]`.
    vectors: Vec<f64>,
    pub ground_degeneracy: usize,
    /// Model parameters this spectrum came from, when known.
    pub origin: Option<LatticeSpec>,
}

impl Spectrum {
    /// Builds and diagonalizes the Hamiltonian of `spec`.
    pub fn of(spec: &LatticeSpec) -> Result<Spectrum> {
        let h = build_hamiltonian(spec)?;
        let mut spectrum = diagonalize(&h, DEFAULT_DEG_TOL).map_err(|e| match e {
            Error::NoConvergence { iterations, .. } => Error::NoConvergence {
                iterations,
                context: format!("gamma={}, lambda={}, alpha={}", spec.gamma, spec.lambda, spec.alpha),
            },
            other => other,
        })?;
        spectrum.origin = Some(*spec);
        Ok(spectrum)
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn n_sites(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|r| self.vectors[r * n + k]).collect()
    }

    pub fn ground_state(&self) -> Vec<f64> {
        self.vector(0)
    }

    /// `V diag(E) Vᵀ`.
    pub fn reconstruct(&self) -> DenseSymMatrix {
        let n = self.dim();
        let mut m = DenseSymMatrix::zeros(n);
        for k in 0..n {
            m.add_outer(self.energies[k], &self.vector(k));
        }
        m
    }
}

/// Full eigendecomposition of `h`.
///
/// Levels within `deg_tol · max(1, |E|)` of the first level of their cluster
/// are treated as degenerate. Inside each cluster the basis is rebuilt by
/// projecting the unit vectors e_0, e_1, … onto the cluster subspace and
/// orthonormalizing in index order, so the choice does not depend on the
/// solver's internal rotation. Every vector's first non-negligible component
/// is made positive.
pub fn diagonalize(h: &DenseSymMatrix, deg_tol: f64) -> Result<Spectrum> {
    let n = h.dim();
    let eig = symmetric_eigen(h.as_slice(), n)?;
    let energies = eig.values;
    let mut columns: Vec<Vec<f64>> = (0..n).map(|k| eig_column(&eig.vectors, n, k)).collect();

    let mut start = 0;
    let mut ground_degeneracy = 0;
    while start < n {
        let scale = deg_tol * energies[start].abs().max(1.0);
        let mut end = start + 1;
        while end < n && energies[end] - energies[start] <= scale {
            end += 1;
        }
        if end - start > 1 {
            canonicalize_cluster(&mut columns[start..end]);
        }
        if start == 0 {
            ground_degeneracy = end;
        }
        start = end;
    }
    for col in &mut columns {
        fix_sign(col);
    }

    let mut vectors = vec![0.0; n * n];
    for (k, col) in columns.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + k] = col[r];
        }
    }
    Ok(Spectrum { energies, vectors, ground_degeneracy, origin: None })
}

fn eig_column(v: &[f64], n: usize, k: usize) -> Vec<f64> {
    (0..n).map(|r| v[r * n + k]).collect()
}

const CLUSTER_PIVOT_MIN: f64 = 1e-2;
const SIGN_ZERO: f64 = 1e-10;

fn canonicalize_cluster(cols: &mut [Vec<f64>]) {
    let m = cols.len();
    let n = cols[0].len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    for b in 0..n {
        if basis.len() == m {
            break;
        }
        // Projection of e_b onto the cluster subspace.
        let mut u = vec![0.0; n];
        for col in cols.iter() {
            let c = col[b];
            for (x, y) in u.iter_mut().zip(col) {
                *x += c * y;
            }
        }
        for _ in 0..2 {
            for q in &basis {
                let dot: f64 = u.iter().zip(q).map(|(a, b)| a * b).sum();
                for (x, y) in u.iter_mut().zip(q) {
                    *x -= dot * y;
                }
            }
        }
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > CLUSTER_PIVOT_MIN {
            u.iter_mut().for_each(|x| *x /= norm);
            basis.push(u);
        }
    }
    debug_assert_eq!(basis.len(), m, "cluster basis incomplete");
    if basis.len() == m {
        cols.clone_from_slice(&basis);
    }
}

fn fix_sign(v: &mut [f64]) {
    if let Some(first) = v.iter().find(|x| x.abs() > SIGN_ZERO) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Relabels the sites of a state: amplitude on configuration `b` moves to the
/// configuration where site `perm[s]` holds the spin site `s` held.
/// `perm` is 1-based with index 0 unused.
pub fn permute_sites(psi: &[f64], perm: &[usize]) -> Vec<f64> {
    let n = psi.len().trailing_zeros() as usize;
    let mut out = vec![0.0; psi.len()];
    for (b, &amp) in psi.iter().enumerate() {
        let mut target = 0;
        for s in 1..=n {
            let bit = (b >> site_shift(n, s)) & 1;
            target |= bit << site_shift(n, perm[s]);
        }
        out[target] = amp;
    }
    out
}
