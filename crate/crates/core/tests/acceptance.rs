//! Acceptance criteria. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;

use rayon::prelude::*;

use spinxy::eigen::symmetric_eigen;
use spinxy::oracles::run_oracle_suite;
use spinxy::sweep::Quantity;
use spinxy::thermal::thermal_density_matrix;
use spinxy::{
    geometric_entanglement, make_ensemble, pair_eof, run_sweep, thermal_energy_gap, threshold_multipartite,
    threshold_pair,
};
use spinxy::{GeSearchConfig, Grid, LatticeKind, LatticeSpec, ScanConfig, Spectrum, SweepConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

const VANISH: f64 = 1e-6;

fn grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    let n = ((max - min) / step).round() as usize;
    (0..=n).map(|k| min + step * k as f64).collect()
}

fn spectrum(kind: LatticeKind, gamma: f64, lambda: f64, alpha: f64) -> Spectrum {
    Spectrum::of(&LatticeSpec::new(kind, gamma, lambda).with_alpha(alpha)).expect("valid lattice")
}

/// Largest entanglement among the given pairs and the ground-state GE at kT = 0.
fn max_entanglement(s: &Spectrum, pairs: &[(usize, usize)]) -> f64 {
    let ens = make_ensemble(s, 0.0).unwrap();
    let ef = pairs.iter().map(|&(i, j)| pair_eof(s, &ens, i, j).unwrap()).fold(0.0, f64::max);
    let g = geometric_entanglement(&s.ground_state(), &GeSearchConfig::default()).unwrap().g;
    ef.max(g)
}

/// (λ, max entanglement) along the grid, evaluated in parallel.
fn profile(kind: LatticeKind, alpha: f64, lambdas: &[f64], pairs: &[(usize, usize)]) -> Vec<(f64, f64)> {
    lambdas.par_iter().map(|&l| (l, max_entanglement(&spectrum(kind, 0.0, l, alpha), pairs))).collect()
}

fn last_entangled(profile: &[(f64, f64)]) -> Option<f64> {
    profile.iter().filter(|(_, e)| *e > VANISH).map(|(l, _)| *l).next_back()
}

const STAR_PAIRS: [(usize, usize); 4] = [(1, 2), (1, 4), (1, 5), (1, 7)];

fn c1() -> Outcome {
    let prof = profile(LatticeKind::Star7, 0.0, &grid(0.0, 3.0, 0.01), &STAR_PAIRS);
    let last = last_entangled(&prof).ok_or("never entangled")?;
    let above = prof.iter().filter(|(l, _)| *l >= 1.90 - 1e-9).map(|(_, e)| *e).fold(0.0, f64::max);
    let at_15 = prof.iter().find(|(l, _)| (l - 1.5).abs() < 1e-9).unwrap().1;
    let msg = format!("last entangled lambda = {last:.2}, max above 1.90 = {above:.2e}, max at 1.5 = {at_15:.3}");
    if (1.75..=1.95).contains(&last) && above < VANISH && at_15 > 1e-2 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c2() -> Outcome {
    let pairs: Vec<(usize, usize)> = (1..=7).flat_map(|i| (i + 1..=7).map(move |j| (i, j))).collect();
    let prof = profile(LatticeKind::Chain7, 0.0, &grid(0.0, 2.0, 0.01), &pairs);
    let last = last_entangled(&prof).ok_or("never entangled")?;
    let msg = format!("last entangled lambda = {last:.2} (window [0.85, 1.00])");
    if (0.85..=1.00).contains(&last) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c3() -> Outcome {
    let s = spectrum(LatticeKind::Star7, 1.0, 0.0, 0.0);
    let g = geometric_entanglement(&s.ground_state(), &GeSearchConfig::default()).map_err(|e| e.to_string())?.g;
    let msg = format!("G = {g:.4} (target 0.92 +/- 0.02), ground_degeneracy = {}", s.ground_degeneracy);
    if (g - 0.92).abs() <= 0.02 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c4() -> Outcome {
    let s = spectrum(LatticeKind::Star7, 1.0, 300.0, 0.0);
    let ens = make_ensemble(&s, 0.0).unwrap();
    let ef12 = pair_eof(&s, &ens, 1, 2).unwrap();
    let ef14 = pair_eof(&s, &ens, 1, 4).unwrap();
    let msg = format!("EF(1,2) = {ef12:.3e}, EF(1,4) = {ef14:.3e}");
    let ok = |x: f64| (1e-6..=1e-4).contains(&x);
    if ok(ef12) && ok(ef14) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c5() -> Outcome {
    let values: Vec<(f64, f64)> = grid(0.0, 3.0, 0.02)
        .par_iter()
        .map(|&l| {
            let s = spectrum(LatticeKind::Chain7, 1.0, l, 0.0);
            (l, pair_eof(&s, &make_ensemble(&s, 0.0).unwrap(), 1, 2).unwrap())
        })
        .collect();
    let (arg, best) = values.iter().copied().fold((f64::NAN, -1.0), |acc, (l, e)| if e > acc.1 { (l, e) } else { acc });
    let msg = format!("EF(1,2) peaks at lambda = {arg:.2} with {best:.4}");
    if (0.8..=1.2).contains(&arg) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c6() -> Outcome {
    let s = spectrum(LatticeKind::Star7, 1.0, 20.0, 0.0);
    let r = threshold_pair(&s, 1, 2, &ScanConfig::default()).map_err(|e| e.to_string())?;
    let msg = format!("t_th(1,2) at lambda = 20 is {:.4} J (target 8 +/- 1.5)", r.t_th);
    if (r.t_th - 8.0).abs() <= 1.5 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c7() -> Outcome {
    let scan = ScanConfig::default();
    let rows: Vec<(f64, f64, f64, f64)> = grid(5.0, 20.0, 1.0)
        .par_iter()
        .map(|&l| {
            let s = spectrum(LatticeKind::Star7, 1.0, l, 0.0);
            let t12 = threshold_pair(&s, 1, 2, &scan).unwrap().t_th;
            let t14 = threshold_pair(&s, 1, 4, &scan).unwrap().t_th;
            let g = geometric_entanglement(&s.ground_state(), &GeSearchConfig::default()).unwrap().g;
            let tme = threshold_multipartite(&s, g, scan.tol).unwrap().t_th;
            (l, t12, t14, tme)
        })
        .collect();
    let monotone = |f: fn(&(f64, f64, f64, f64)) -> f64| rows.windows(2).all(|w| f(&w[1]) >= f(&w[0]));
    let at10 = rows.iter().find(|r| r.0 == 10.0).unwrap();
    let msg = format!(
        "{} points; t_th(1,2) {:.3}..{:.3}, t_th(1,4) {:.3}..{:.3}; at lambda = 10: t_th(1,2) = {:.3} vs ME bound {:.3}",
        rows.len(),
        rows[0].1,
        rows.last().unwrap().1,
        rows[0].2,
        rows.last().unwrap().2,
        at10.1,
        at10.3
    );
    if rows.len() == 16 && monotone(|r| r.1) && monotone(|r| r.2) && at10.1 > at10.3 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c8() -> Outcome {
    let lambdas = grid(0.0, 4.0, 0.01);
    let mut points = Vec::new();
    for alpha in [-0.5, 0.0, 0.5] {
        let last =
            last_entangled(&profile(LatticeKind::Star7, alpha, &lambdas, &STAR_PAIRS)).ok_or("never entangled")?;
        points.push((alpha, last));
    }
    let msg = points.iter().map(|(a, l)| format!("alpha {a:+.1} -> {l:.2}")).collect::<Vec<_>>().join(", ");
    if points.windows(2).all(|w| w[1].1 > w[0].1) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c9() -> Outcome {
    let reports = run_oracle_suite(0).map_err(|e| e.to_string())?;
    let required = ["two_spin_spectrum", "partial_trace", "werner_concurrence", "ge_ghz3", "ge_w3"];
    let mut failures: Vec<String> = Vec::new();
    for name in required {
        match reports.iter().find(|r| r.name == name) {
            Some(r) if r.passed => {}
            Some(r) => failures.push(format!("{name} error {:.2e} > {:.0e}", r.max_abs_error, r.tolerance)),
            None => failures.push(format!("{name} missing")),
        }
    }
    let thermal_problems: usize = grid(0.0, 4.75, 0.25)
        .par_iter()
        .map(|&l| {
            let s = spectrum(LatticeKind::Star7, 1.0, l, 0.0);
            let mut bad = 0;
            let mut prev = -1.0;
            for kt in grid(0.05, 9.55, 0.5) {
                let ens = make_ensemble(&s, kt).unwrap();
                let rho = thermal_density_matrix(&s, &ens);
                let min_eig = symmetric_eigen(rho.as_slice(), rho.dim()).unwrap().values[0];
                let gap = thermal_energy_gap(&s, &ens);
                if (rho.trace() - 1.0).abs() > 1e-12 || min_eig < -1e-12 || gap < prev - 1e-12 {
                    bad += 1;
                }
                prev = gap;
            }
            bad
        })
        .sum();
    if thermal_problems > 0 {
        failures.push(format!("{thermal_problems} thermal grid points violate trace/PSD/gap monotonicity"));
    }
    if failures.is_empty() {
        Ok(format!("{} oracle checks and a 20x20 thermal grid agree", reports.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn c10() -> Outcome {
    let mut cfg = SweepConfig::new(
        LatticeKind::Star7,
        0.7,
        Grid::linear(0.0, 3.0, 7),
        vec![Quantity::Ef, Quantity::Ge, Quantity::DeltaE, Quantity::TthPair, Quantity::TthMe],
    );
    cfg.kt_grid = Some(Grid::linear(0.0, 2.0, 5));
    cfg.pairs = vec![(1, 2), (1, 7)];
    cfg.seed = 2024;
    let a = run_sweep(&cfg).map_err(|e| e.to_string())?.to_csv_string();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(|| run_sweep(&cfg)).map_err(|e| e.to_string())?.to_csv_string();
    if a == b {
        Ok(format!("{} bytes identical across runs and thread counts", a.len()))
    } else {
        Err("CSV differs between runs".into())
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1", "isotropic star separability point", c1),
        ("C2", "isotropic chain separability point", c2),
        ("C3", "zero-field star geometric entanglement", c3),
        ("C4", "high-field pair entanglement", c4),
        ("C5", "Ising chain EF(1,2) peak", c5),
        ("C6", "pair threshold at lambda = 20", c6),
        ("C7", "threshold monotonicity and ordering", c7),
        ("C8", "impurity shift of the separability point", c8),
        ("C9", "oracle suite", c9),
        ("C10", "deterministic CSV", c10),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {id} {title}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {msg} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
