//! Two-site reduced density matrices, Wootters concurrence and entanglement
//! of formation.
//!
//! Pair matrices are 4×4 in the basis |00⟩, |01⟩, |10⟩, |11⟩ of sites
//! (i, j) with i < j. Because the Hamiltonian is real every reduced matrix is
//! real symmetric, so ρ* = ρ and the spin-flipped partner is real too.

use crate::eigen::symmetric_eigen;
use crate::error::{invalid, Error, Result};
use crate::hamiltonian::{site_shift, Spectrum};
use crate::thermal::ThermalEnsemble;

pub type Mat4 = [[f64; 4]; 4];

/// Concurrence at or below this value counts as "no entanglement".
pub const ENTANGLEMENT_EPS: f64 = 1e-9;
/// Eigenvalues above `-PSD_ACCEPT` are clamped to zero silently.
pub const PSD_ACCEPT: f64 = 1e-12;
/// Eigenvalues below `-PSD_REJECT` are reported as an invariant violation.
pub const PSD_REJECT: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct PairDensity {
    pub i: usize,
    pub j: usize,
    pub rho: Mat4,
    pub kt: f64,
}

impl PairDensity {
    pub fn trace(&self) -> f64 {
        (0..4).map(|k| self.rho[k][k]).sum()
    }
}

fn check_pair(n_sites: usize, i: usize, j: usize) -> Result<(usize, usize)> {
    if i == j {
        return invalid(format!("pair sites must differ, got ({i},{j})"));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    if lo < 1 || hi > n_sites {
        return invalid(format!("pair ({i},{j}) outside sites 1..={n_sites}"));
    }
    Ok((lo, hi))
}

/// Adds `w · Tr_rest |ψ⟩⟨ψ|` for the pair (i, j), i < j.
fn accumulate_pair(n_sites: usize, i: usize, j: usize, w: f64, psi: &[f64], rho: &mut Mat4) {
    let si = site_shift(n_sites, i);
    let sj = site_shift(n_sites, j);
    let mask = (1usize << si) | (1usize << sj);
    for (b, &amp) in psi.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let row = (((b >> si) & 1) << 1) | ((b >> sj) & 1);
        let rest = b & !mask;
        let wa = w * amp;
        for col in 0..4 {
            let partner = rest | ((col >> 1) << si) | ((col & 1) << sj);
            rho[row][col] += wa * psi[partner];
        }
    }
}

/// Reduced density matrix of sites (i, j) in the thermal state, summed
/// eigenstate by eigenstate without building the full ρ_T.
///
/// The sites may be given in either order; the result is always stored for
/// (min, max).
pub fn partial_trace_pair(spectrum: &Spectrum, ens: &ThermalEnsemble, i: usize, j: usize) -> Result<PairDensity> {
    let n = spectrum.n_sites();
    let (i, j) = check_pair(n, i, j)?;
    let mut rho = [[0.0; 4]; 4];
    for (k, &w) in ens.weights.iter().enumerate() {
        if w > 0.0 {
            accumulate_pair(n, i, j, w, &spectrum.vector(k), &mut rho);
        }
    }
    Ok(PairDensity { i, j, rho, kt: ens.kt })
}

/// Reduced pair matrix of a pure state.
pub fn pair_density_of_state(psi: &[f64], i: usize, j: usize) -> Result<PairDensity> {
    if !psi.len().is_power_of_two() || psi.len() < 4 {
        return invalid(format!("state length {} is not 2^n with n >= 2", psi.len()));
    }
    let n = psi.len().trailing_zeros() as usize;
    let (i, j) = check_pair(n, i, j)?;
    let mut rho = [[0.0; 4]; 4];
    accumulate_pair(n, i, j, 1.0, psi, &mut rho);
    Ok(PairDensity { i, j, rho, kt: 0.0 })
}

/// ρ̃ = (σʸ⊗σʸ) ρ (σʸ⊗σʸ) for real ρ.
pub fn spin_flip(rho: &Mat4) -> Mat4 {
    const SIGN: [f64; 4] = [1.0, -1.0, -1.0, 1.0];
    let mut out = [[0.0; 4]; 4];
    for p in 0..4 {
        for q in 0..4 {
            out[p][q] = SIGN[p] * SIGN[q] * rho[3 - p][3 - q];
        }
    }
    out
}

fn flatten(m: &Mat4) -> Vec<f64> {
    m.iter().flatten().copied().collect()
}

fn matmul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn symmetrize(m: &mut Mat4) {
    for r in 0..4 {
        for c in 0..r {
            let avg = 0.5 * (m[r][c] + m[c][r]);
            m[r][c] = avg;
            m[c][r] = avg;
        }
    }
}

/// Spectral square root of a positive semidefinite 4×4 matrix.
pub fn psd_sqrt(m: &Mat4) -> Result<Mat4> {
    let eig = symmetric_eigen(&flatten(m), 4)?;
    let mut out = [[0.0; 4]; 4];
    for (k, &value) in eig.values.iter().enumerate() {
        if value < -PSD_REJECT {
            return Err(Error::Invariant(format!("matrix is not positive semidefinite (eigenvalue {value:e})")));
        }
        let root = value.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        let v = eig.vector(k);
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] += root * v[r] * v[c];
            }
        }
    }
    Ok(out)
}

/// The four ε values: square roots of the eigenvalues of √ρ ρ̃ √ρ, descending.
pub fn wootters_spectrum(rho: &Mat4) -> Result<[f64; 4]> {
    let root = psd_sqrt(rho)?;
    let mut m = matmul(&matmul(&root, &spin_flip(rho)), &root);
    symmetrize(&mut m);
    let eig = symmetric_eigen(&flatten(&m), 4)?;
    let mut eps = [0.0; 4];
    for (k, &v) in eig.values.iter().rev().enumerate() {
        eps[k] = v.max(0.0).sqrt();
    }
    Ok(eps)
}

/// Wootters concurrence of a real two-qubit density matrix.
pub fn concurrence_of(rho: &Mat4) -> Result<f64> {
    let eps = wootters_spectrum(rho)?;
    Ok((eps[0] - eps[1] - eps[2] - eps[3]).clamp(0.0, 1.0))
}

pub fn concurrence(pair: &PairDensity) -> Result<f64> {
    concurrence_of(&pair.rho)
}

/// Binary entropy in bits, with h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Entanglement of formation as a function of concurrence.
pub fn eof(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 - (1.0 - c * c).sqrt()))
}

/// EF between sites i and j in the thermal state `ens`.
pub fn pair_eof(spectrum: &Spectrum, ens: &ThermalEnsemble, i: usize, j: usize) -> Result<f64> {
    partial_trace_pair(spectrum, ens, i, j).and_then(|p| concurrence(&p)).map(eof)
}
