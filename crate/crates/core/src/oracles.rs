//! Brute-force references, kept on arithmetic paths separate from the
//! production code they check.
//!
//! - Hamiltonians from explicit Kronecker products of complex Pauli matrices
//!   (nalgebra), instead of bit manipulation.
//! - Partial trace as a literal loop over every spectator-spin index.
//! - Concurrence from the spectrum of the non-symmetric product ρρ̃, using a
//!   general complex eigen-solver.
//! - Geometric entanglement of ≤ 3 qubits by exhaustive grid search.

use nalgebra::{Complex, DMatrix, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bipartite::{concurrence_of, pair_density_of_state, partial_trace_pair, Mat4};
use crate::error::{invalid, Result};
use crate::geometric::{geometric_entanglement, GeSearchConfig};
use crate::hamiltonian::{build_xy_hamiltonian, diagonalize, Spectrum, DEFAULT_DEG_TOL};
use crate::lattice::{Edge, LatticeKind, LatticeSpec};
use crate::thermal::{make_ensemble, thermal_density_matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleReport {
    pub fn new(name: impl Into<String>, max_abs_error: f64, tolerance: f64) -> Self {
        OracleReport { name: name.into(), max_abs_error, tolerance, passed: max_abs_error <= tolerance }
    }
}

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn pauli(which: char) -> DMatrix<C> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match which {
        'x' => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        'y' => DMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        'z' => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => DMatrix::identity(2, 2),
    }
}

/// σ^a on `site` (1-based) and σ^b on `other`, identity elsewhere.
fn pauli_string(n: usize, ops: &[(usize, char)]) -> DMatrix<C> {
    let mut out = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for s in 1..=n {
        let op = ops.iter().find(|(site, _)| *site == s).map_or('i', |(_, p)| *p);
        out = out.kronecker(&pauli(op));
    }
    out
}

/// Eigenvalues of the explicit two-spin matrix
/// [[-2λ,0,0,-γ],[0,0,-1,0],[0,-1,0,0],[-γ,0,0,2λ]]: {±1, ±√(4λ²+γ²)}.
pub fn oracle_two_spin_spectrum(gamma: f64, lambda: f64) -> [f64; 4] {
    let r = (4.0 * lambda * lambda + gamma * gamma).sqrt();
    let mut e = [-1.0, 1.0, -r, r];
    e.sort_by(f64::total_cmp);
    e
}

/// Same Hamiltonian as the production builder, assembled from Kronecker
/// products of Pauli matrices.
pub fn oracle_kron_hamiltonian(n: usize, edges: &[Edge], gamma: f64, field: f64) -> Result<DMatrix<f64>> {
    let dim = 1 << n;
    let mut h = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    for e in edges {
        let xx = pauli_string(n, &[(e.i, 'x'), (e.j, 'x')]);
        let yy = pauli_string(n, &[(e.i, 'y'), (e.j, 'y')]);
        h -= xx * c(0.5 * (1.0 + gamma) * e.coupling, 0.0);
        h -= yy * c(0.5 * (1.0 - gamma) * e.coupling, 0.0);
    }
    for s in 1..=n {
        h -= pauli_string(n, &[(s, 'z')]) * c(field, 0.0);
    }
    if h.iter().any(|z| z.im.abs() > 1e-14) {
        return invalid("Kronecker Hamiltonian has imaginary entries");
    }
    Ok(h.map(|z| z.re))
}

/// Sorted eigenvalues of a small real symmetric matrix via nalgebra.
pub fn oracle_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Two-site reduced matrix of a 7-qubit density matrix by literal summation
/// over the five spectator spins.
pub fn oracle_partial_trace(rho_full: &DMatrix<f64>, i: usize, j: usize) -> Mat4 {
    assert_eq!(rho_full.nrows(), 128, "oracle partial trace is written for 7 qubits");
    assert!(i != j && (1..=7).contains(&i) && (1..=7).contains(&j));
    let spectators: Vec<usize> = (1..=7).filter(|&s| s != i && s != j).collect();
    let index = |bits: &[usize; 8]| -> usize { (1..=7).fold(0, |acc, s| (acc << 1) | bits[s]) };
    let mut out = [[0.0; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    let mut sum = 0.0;
                    for r0 in 0..2 {
                        for r1 in 0..2 {
                            for r2 in 0..2 {
                                for r3 in 0..2 {
                                    for r4 in 0..2 {
                                        let mut left = [0usize; 8];
                                        for (k, r) in [r0, r1, r2, r3, r4].into_iter().enumerate() {
                                            left[spectators[k]] = r;
                                        }
                                        let mut right = left;
                                        left[i] = a;
                                        left[j] = b;
                                        right[i] = a2;
                                        right[j] = b2;
                                        sum += rho_full[(index(&left), index(&right))];
                                    }
                                }
                            }
                        }
                    }
                    out[2 * a + b][2 * a2 + b2] = sum;
                }
            }
        }
    }
    out
}

/// Concurrence from the square roots of the eigenvalues of ρρ̃, with
/// ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ) built from complex Pauli matrices.
pub fn oracle_concurrence(rho: &Mat4) -> f64 {
    let yy = pauli('y').kronecker(&pauli('y'));
    let rho_c = DMatrix::from_fn(4, 4, |r, col| c(rho[r][col], 0.0));
    let flipped = &yy * rho_c.conjugate() * &yy;
    let product = &rho_c * flipped;
    if product.iter().any(|z| z.im.abs() > 1e-12) {
        return f64::NAN;
    }
    let real = Matrix4::from_fn(|r, col| product[(r, col)].re);
    let mut eps: Vec<f64> = real.complex_eigenvalues().iter().map(|z| z.re.max(0.0).sqrt()).collect();
    eps.sort_by(|a, b| b.total_cmp(a));
    (eps[0] - eps[1] - eps[2] - eps[3]).max(0.0)
}

/// Closed-form concurrence of p·|Φ⁺⟩⟨Φ⁺| + (1-p)·I/4.
pub fn oracle_werner_concurrence(p: f64) -> f64 {
    (0.5 * (3.0 * p - 1.0)).max(0.0)
}

pub fn werner_state(p: f64) -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for k in 0..4 {
        m[k][k] = 0.25 * (1.0 - p);
    }
    for (r, col) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        m[r][col] += 0.5 * p;
    }
    m
}

/// Exhaustive search for the best real product-state overlap of a state of
/// at most three qubits. The amplitudes of the first n-1 sites run over a
/// grid P ∈ [-1, 1] with the given spacing; the last site, being linear in
/// the overlap, is optimized exactly as the norm of the remaining 2-vector.
pub fn oracle_ge_grid(psi: &[f64], resolution: f64) -> Result<f64> {
    if !(resolution > 0.0 && resolution <= 1e-2) {
        return invalid(format!("grid resolution must lie in (0, 1e-2], got {resolution}"));
    }
    let n = match psi.len() {
        2 => 1,
        4 => 2,
        8 => 3,
        len => return invalid(format!("grid oracle handles 1..=3 qubits, got {len} amplitudes")),
    };
    let steps = (2.0 / resolution).round() as usize;
    let axis: Vec<(f64, f64)> = (0..=steps)
        .map(|k| {
            let p = -1.0 + 2.0 * k as f64 / steps as f64;
            (p, (1.0 - p * p).max(0.0).sqrt())
        })
        .collect();
    let free = n - 1;
    let total = axis.len().pow(free as u32);
    let mut best: f64 = 0.0;
    for flat in 0..total {
        let mut last = [0.0; 2];
        for (b, &amp) in psi.iter().enumerate() {
            let mut coef = amp;
            let mut k = flat;
            for s in 0..free {
                let (p, q) = axis[k % axis.len()];
                k /= axis.len();
                let bit = (b >> (n - 1 - s)) & 1;
                coef *= if bit == 0 { p } else { q };
            }
            last[b & 1] += coef;
        }
        best = best.max(last[0].hypot(last[1]));
    }
    Ok((1.0 - best * best).max(0.0))
}

pub fn ghz3() -> Vec<f64> {
    let mut v = vec![0.0; 8];
    v[0] = std::f64::consts::FRAC_1_SQRT_2;
    v[7] = std::f64::consts::FRAC_1_SQRT_2;
    v
}

pub fn w3() -> Vec<f64> {
    let mut v = vec![0.0; 8];
    for b in [1, 2, 4] {
        v[b] = 1.0 / 3f64.sqrt();
    }
    v
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() - 0.5).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

fn max_diff4(a: &Mat4, b: &Mat4) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn spectrum_error(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Runs every oracle comparison and reports one line per check.
pub fn run_oracle_suite(seed: u64) -> Result<Vec<OracleReport>> {
    let mut reports = Vec::new();
    let single = [Edge { i: 1, j: 2, coupling: 1.0 }];

    let mut err: f64 = 0.0;
    for &(gamma, lambda) in &[(1.0, 0.0), (0.0, 0.0), (1.0, 1.0), (0.5, 0.3), (0.2, 2.7), (0.0, 1.1)] {
        let h = build_xy_hamiltonian(2, &single, gamma, lambda);
        let s = diagonalize(&h, DEFAULT_DEG_TOL)?;
        err = err.max(spectrum_error(&s.energies, &oracle_two_spin_spectrum(gamma, lambda)));
    }
    reports.push(OracleReport::new("two_spin_spectrum", err, 1e-10));

    let chain3 = [Edge { i: 1, j: 2, coupling: 1.0 }, Edge { i: 2, j: 3, coupling: 1.0 }];
    let mut err: f64 = 0.0;
    for &(gamma, lambda) in &[(1.0, 0.0), (0.5, 0.7), (0.0, 1.3)] {
        let h = build_xy_hamiltonian(3, &chain3, gamma, lambda);
        let s = diagonalize(&h, DEFAULT_DEG_TOL)?;
        let k = oracle_kron_hamiltonian(3, &chain3, gamma, lambda)?;
        let mat_err = (0..8)
            .flat_map(|r| (0..8).map(move |col| (r, col)))
            .map(|(r, col)| (h.get(r, col) - k[(r, col)]).abs())
            .fold(0.0, f64::max);
        err = err.max(mat_err).max(spectrum_error(&s.energies, &oracle_eigenvalues(k)));
    }
    reports.push(OracleReport::new("three_spin_spectrum", err, 1e-10));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut err: f64 = 0.0;
    for t in 0..100 {
        let psi = random_state(&mut rng, 128);
        let full = DMatrix::from_fn(128, 128, |r, col| psi[r] * psi[col]);
        let (i, j) = (1 + t % 7, 1 + (t / 7 + t % 7 + 1) % 7);
        let (i, j) = if i == j { (i, i % 7 + 1) } else { (i, j) };
        let fast = pair_density_of_state(&psi, i, j)?;
        let slow = oracle_partial_trace(&full, fast.i, fast.j);
        err = err.max(max_diff4(&fast.rho, &slow));
    }
    let spectrum = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 0.5, 0.9))?;
    let ens = make_ensemble(&spectrum, 0.7)?;
    let rho_t = thermal_density_matrix(&spectrum, &ens);
    let full = DMatrix::from_row_slice(128, 128, rho_t.as_slice());
    for (i, j) in [(1, 2), (1, 4), (1, 5), (1, 7), (3, 6)] {
        let fast = partial_trace_pair(&spectrum, &ens, i, j)?;
        err = err.max(max_diff4(&fast.rho, &oracle_partial_trace(&full, i, j)));
    }
    reports.push(OracleReport::new("partial_trace", err, 1e-12));

    let mut err: f64 = 0.0;
    for k in 0..=5 {
        let p = 0.2 * k as f64;
        let rho = werner_state(p);
        let closed = oracle_werner_concurrence(p);
        err = err.max((concurrence_of(&rho)? - closed).abs()).max((oracle_concurrence(&rho) - closed).abs());
    }
    reports.push(OracleReport::new("werner_concurrence", err, 1e-9));

    let mut err: f64 = 0.0;
    let mut entangled = 0;
    for _ in 0..50 {
        let (a, b) = (random_state(&mut rng, 4), random_state(&mut rng, 4));
        let w = rng.gen::<f64>();
        let mut rho = [[0.0; 4]; 4];
        for r in 0..4 {
            for col in 0..4 {
                rho[r][col] = w * a[r] * a[col] + (1.0 - w) * b[r] * b[col];
            }
        }
        let fast = concurrence_of(&rho)?;
        entangled += usize::from(fast > 1e-3);
        err = err.max((fast - oracle_concurrence(&rho)).abs());
    }
    if entangled < 10 {
        return Err(crate::error::Error::Invariant("concurrence oracle sampled too few entangled states".into()));
    }
    // Rank-deficient states put round-off (~1e-16) into zero eigenvalues of
    // ρρ̃; their square roots then carry ~1e-8 of noise.
    reports.push(OracleReport::new("concurrence_vs_nonsymmetric", err, 1e-6));

    let cfg = GeSearchConfig { samples: 20_000, seed, ..Default::default() };
    let mut product = vec![0.0; 8];
    product[0] = 1.0;
    for (name, psi, expected) in [("ge_ghz3", ghz3(), 0.5), ("ge_w3", w3(), 5.0 / 9.0), ("ge_product3", product, 0.0)] {
        let grid = oracle_ge_grid(&psi, 1e-3)?;
        let search = geometric_entanglement(&psi, &cfg)?.g;
        let e = (grid - expected).abs().max((search - grid).abs());
        reports.push(OracleReport::new(name, e, 1e-3));
    }
    Ok(reports)
}
