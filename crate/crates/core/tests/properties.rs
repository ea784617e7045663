use proptest::prelude::*;

use spinxy::bipartite::{concurrence_of, pair_density_of_state, psd_sqrt, Mat4};
use spinxy::geometric::overlap;
use spinxy::hamiltonian::{build_xy_hamiltonian, permute_sites};
use spinxy::lattice::{build_edges, ring_rotation};
use spinxy::thermal::{energy_variance, mean_energy};
use spinxy::{diagonalize, geometric_entanglement, make_ensemble, pair_eof, GeSearchConfig, ProductParams};
use spinxy::{LatticeKind, LatticeSpec, Spectrum};

fn lattice_kind() -> impl Strategy<Value = LatticeKind> {
    prop_oneof![Just(LatticeKind::Chain7), Just(LatticeKind::Star7)]
}

fn unit_vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim).prop_filter_map("zero vector", |v| {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        (n > 1e-3).then(|| v.iter().map(|x| x / n).collect())
    })
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psd_sqrt_squares_back(psi in unit_vector(128), i in 1usize..=7, j in 1usize..=7) {
        prop_assume!(i != j);
        let rho = pair_density_of_state(&psi, i, j).unwrap().rho;
        let s = psd_sqrt(&rho).unwrap();
        let back = matmul(&s, &s);
        for r in 0..4 {
            for c in 0..4 {
                prop_assert!((back[r][c] - rho[r][c]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn hamiltonian_commutes_with_parity(kind in lattice_kind(), gamma in 0.0f64..=1.0, lambda in 0.0f64..5.0, alpha in -0.9f64..2.0) {
        let lattice = build_edges(kind, alpha).unwrap();
        let h = build_xy_hamiltonian(7, &lattice.edges, gamma, lambda);
        let parity = |b: usize| if b.count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut worst: f64 = 0.0;
        for r in 0..128 {
            for c in 0..128 {
                worst = worst.max((h.get(r, c) * (parity(c) - parity(r))).abs());
            }
        }
        prop_assert!(worst <= 1e-10);
    }

    #[test]
    fn spectrum_even_in_field(kind in lattice_kind(), gamma in 0.0f64..=1.0, lambda in 0.0f64..5.0) {
        let lattice = build_edges(kind, 0.0).unwrap();
        let plus = diagonalize(&build_xy_hamiltonian(7, &lattice.edges, gamma, lambda), 1e-9).unwrap();
        let minus = diagonalize(&build_xy_hamiltonian(7, &lattice.edges, gamma, -lambda), 1e-9).unwrap();
        for (a, b) in plus.energies.iter().zip(&minus.energies) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn heat_capacity_matches_variance(gamma in 0.0f64..=1.0, lambda in 0.0f64..4.0, kt in 0.3f64..10.0) {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, gamma, lambda)).unwrap();
        let h = 1e-4 * kt;
        let e = |t: f64| mean_energy(&s, &make_ensemble(&s, t).unwrap());
        let derivative = (e(kt + h) - e(kt - h)) / (2.0 * h);
        let var = energy_variance(&s, &make_ensemble(&s, kt).unwrap()) / (kt * kt);
        prop_assert!((derivative - var).abs() <= 1e-4 * var.max(1e-3), "{derivative} vs {var}");
    }

    #[test]
    fn concurrence_is_bounded(psi in unit_vector(128), i in 1usize..=7, j in 1usize..=7) {
        prop_assume!(i != j);
        let c = concurrence_of(&pair_density_of_state(&psi, i, j).unwrap().rho).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn product_overlap_is_at_most_one(psi in unit_vector(128), p in prop::collection::vec(-1.0f64..=1.0, 7)) {
        let o = overlap(&psi, &ProductParams::from_amplitudes(p)).unwrap();
        prop_assert!(o <= 1.0 + 1e-12);
    }
}

#[test]
fn star_ring_pairs_are_equivalent() {
    for (gamma, lambda, kt) in [(1.0, 1.0, 0.0), (0.5, 2.0, 0.3), (0.0, 1.2, 1.0)] {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, gamma, lambda)).unwrap();
        let ens = make_ensemble(&s, kt).unwrap();
        let a = pair_eof(&s, &ens, 1, 2).unwrap();
        let b = pair_eof(&s, &ens, 2, 5).unwrap();
        assert!((a - b).abs() < 1e-10, "EF(1,2)={a} EF(2,5)={b}");
        let c = pair_eof(&s, &ens, 1, 4).unwrap();
        let d = pair_eof(&s, &ens, 6, 4).unwrap();
        assert!((c - d).abs() < 1e-10);
    }
}

#[test]
fn ge_invariant_under_sign_and_rotation() {
    let cfg = GeSearchConfig { samples: 20_000, ..Default::default() };
    let perm = ring_rotation(LatticeKind::Star7).unwrap();
    for lambda in [0.5, 1.5, 3.0] {
        let psi = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 1.0, lambda)).unwrap().ground_state();
        let g = geometric_entanglement(&psi, &cfg).unwrap().g;
        let negated: Vec<f64> = psi.iter().map(|x| -x).collect();
        let g_neg = geometric_entanglement(&negated, &cfg).unwrap().g;
        let g_rot = geometric_entanglement(&permute_sites(&psi, &perm), &cfg).unwrap().g;
        assert!((g - g_neg).abs() < 1e-8, "{g} vs {g_neg}");
        assert!((g - g_rot).abs() < 1e-6, "{g} vs {g_rot}");
    }
}

#[test]
fn rotated_ground_state_is_still_ground_state() {
    let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 0.7, 1.3)).unwrap();
    let psi = permute_sites(&s.ground_state(), &ring_rotation(LatticeKind::Star7).unwrap());
    let h = spinxy::build_hamiltonian(&LatticeSpec::new(LatticeKind::Star7, 0.7, 1.3)).unwrap();
    let hpsi = h.matvec(&psi);
    let e0 = s.ground_energy();
    let worst = hpsi.iter().zip(&psi).map(|(a, b)| (a - e0 * b).abs()).fold(0.0, f64::max);
    assert!(worst < 1e-9);
}
