//! Canonical ensemble over a [`Spectrum`].
//!
//! All Boltzmann factors are taken relative to the ground energy, so the
//! stored partition sum is Z̃ = Σ exp(-(E_k - E_0)/kT) = Z·exp(E_0/kT). Every
//! level of the spectrum is mixed in at any finite temperature.

use crate::error::{invalid, Result};
use crate::hamiltonian::{DenseSymMatrix, Spectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct ThermalEnsemble {
    pub kt: f64,
    pub weights: Vec<f64>,
    /// Ground-shifted partition sum Z̃.
    pub zshift: f64,
}

pub fn make_ensemble(spectrum: &Spectrum, kt: f64) -> Result<ThermalEnsemble> {
    if !(kt >= 0.0) {
        return invalid(format!("temperature kT must be >= 0, got {kt}"));
    }
    let e0 = spectrum.ground_energy();
    if kt == 0.0 {
        let g0 = spectrum.ground_degeneracy;
        let weights = (0..spectrum.dim()).map(|k| if k < g0 { 1.0 / g0 as f64 } else { 0.0 }).collect();
        return Ok(ThermalEnsemble { kt, weights, zshift: g0 as f64 });
    }
    let mut weights: Vec<f64> = spectrum.energies.iter().map(|e| (-(e - e0) / kt).exp()).collect();
    let zshift: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= zshift);
    Ok(ThermalEnsemble { kt, weights, zshift })
}

/// Z̃(kT), with Z̃(0) equal to the ground degeneracy.
pub fn shifted_partition_sum(spectrum: &Spectrum, kt: f64) -> f64 {
    if kt <= 0.0 {
        return spectrum.ground_degeneracy as f64;
    }
    let e0 = spectrum.ground_energy();
    spectrum.energies.iter().map(|e| (-(e - e0) / kt).exp()).sum()
}

/// ρ_T = Σ_k w_k v_k v_kᵀ.
pub fn thermal_density_matrix(spectrum: &Spectrum, ens: &ThermalEnsemble) -> DenseSymMatrix {
    let mut rho = DenseSymMatrix::zeros(spectrum.dim());
    for (k, &w) in ens.weights.iter().enumerate() {
        if w > 0.0 {
            rho.add_outer(w, &spectrum.vector(k));
        }
    }
    rho
}

pub fn mean_energy(spectrum: &Spectrum, ens: &ThermalEnsemble) -> f64 {
    ens.weights.iter().zip(&spectrum.energies).map(|(w, e)| w * e).sum()
}

pub fn energy_variance(spectrum: &Spectrum, ens: &ThermalEnsemble) -> f64 {
    let mean = mean_energy(spectrum, ens);
    ens.weights.iter().zip(&spectrum.energies).map(|(w, e)| w * (e - mean).powi(2)).sum()
}

/// ⟨E⟩ - E_0, accumulated as Σ w_k (E_k - E_0) so it is never negative.
pub fn thermal_energy_gap(spectrum: &Spectrum, ens: &ThermalEnsemble) -> f64 {
    let e0 = spectrum.ground_energy();
    ens.weights.iter().zip(&spectrum.energies).map(|(w, e)| w * (e - e0)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_xy_hamiltonian, diagonalize, DEFAULT_DEG_TOL};
    use crate::lattice::{Edge, LatticeKind, LatticeSpec};

    fn two_site() -> Spectrum {
        let h = build_xy_hamiltonian(2, &[Edge { i: 1, j: 2, coupling: 1.0 }], 1.0, 0.0);
        diagonalize(&h, DEFAULT_DEG_TOL).unwrap()
    }

    #[test]
    fn two_site_boltzmann_weights() {
        // w ∝ (e, e, 1/e, 1/e)
        let ens = make_ensemble(&two_site(), 1.0).unwrap();
        let expected =
            [0.440_398_538_988_941_2, 0.440_398_538_988_941_2, 0.059_601_461_011_058_78, 0.059_601_461_011_058_78];
        for (w, x) in ens.weights.iter().zip(expected) {
            assert!((w - x).abs() < 1e-12);
        }
    }

    #[test]
    fn two_site_energy_gap() {
        let s = two_site();
        let ens = make_ensemble(&s, 1.0).unwrap();
        assert!((thermal_energy_gap(&s, &ens) - 0.238_405_844_044_235_15).abs() < 1e-12);
    }

    #[test]
    fn zero_temperature_limits() {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 0.5, 1.0)).unwrap();
        assert_eq!(s.ground_degeneracy, 1);
        let ens = make_ensemble(&s, 0.0).unwrap();
        assert_eq!(ens.weights[0], 1.0);
        assert!(ens.weights[1..].iter().all(|&w| w == 0.0));
        assert_eq!(thermal_energy_gap(&s, &ens), 0.0);
        let rho = thermal_density_matrix(&s, &ens);
        let purity: f64 = rho.as_slice().iter().map(|x| x * x).sum();
        assert!((purity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_ground_is_uniform_at_zero_temperature() {
        let ens = make_ensemble(&two_site(), 0.0).unwrap();
        assert_eq!(ens.weights, vec![0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn infinite_temperature_limits() {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 1.0, 2.0)).unwrap();
        let ens = make_ensemble(&s, 1e6).unwrap();
        assert!(ens.weights.iter().all(|w| (w - 1.0 / 128.0).abs() < 1e-4));
        let gap = thermal_energy_gap(&s, &ens);
        assert!((gap + s.ground_energy()).abs() < 1e-4 * s.ground_energy().abs());
        let rho = thermal_density_matrix(&s, &ens);
        let purity: f64 = rho.as_slice().iter().map(|x| x * x).sum();
        assert!((purity - 1.0 / 128.0).abs() < 1e-4);
    }

    #[test]
    fn weights_normalized_and_non_increasing() {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Chain7, 0.5, 0.8)).unwrap();
        for kt in [1e-3, 0.1, 1.0, 10.0] {
            let ens = make_ensemble(&s, kt).unwrap();
            assert!((ens.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for w in ens.weights.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn tiny_temperature_does_not_overflow() {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 1.0, 50.0)).unwrap();
        let ens = make_ensemble(&s, 1e-4).unwrap();
        assert!(ens.weights.iter().all(|w| w.is_finite()));
        assert!((ens.weights[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_temperature() {
        assert!(make_ensemble(&two_site(), -0.1).is_err());
        assert!(make_ensemble(&two_site(), f64::NAN).is_err());
    }

    #[test]
    fn density_matrix_spectrum_equals_weights() {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 0.5, 0.7)).unwrap();
        let ens = make_ensemble(&s, 0.8).unwrap();
        let rho = thermal_density_matrix(&s, &ens);
        let eig = crate::eigen::symmetric_eigen(rho.as_slice(), rho.dim()).unwrap();
        let mut w = ens.weights.clone();
        w.sort_by(f64::total_cmp);
        for (a, b) in eig.values.iter().zip(&w) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn partition_sum_limits() {
        let s = two_site();
        assert_eq!(shifted_partition_sum(&s, 0.0), 2.0);
        assert!((shifted_partition_sum(&s, 1e9) - 4.0).abs() < 1e-8);
    }
}
