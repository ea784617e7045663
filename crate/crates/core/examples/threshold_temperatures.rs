//! Pair and lattice threshold temperatures on the star at γ = 1.

use spinxy::{geometric_entanglement, threshold_multipartite, threshold_pair};
use spinxy::{GeSearchConfig, LatticeKind, LatticeSpec, ScanConfig, Spectrum};

fn main() -> spinxy::Result<()> {
    let scan = ScanConfig::default();
    let ge = GeSearchConfig { samples: 20_000, ..Default::default() };
    println!("{:>6} {:>10} {:>10} {:>10}", "lambda", "T(1,2)", "T(1,4)", "T_lattice");
    for lambda in [2.0, 5.0, 10.0, 15.0, 20.0] {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 1.0, lambda))?;
        let t12 = threshold_pair(&s, 1, 2, &scan)?;
        let t14 = threshold_pair(&s, 1, 4, &scan)?;
        let g = geometric_entanglement(&s.ground_state(), &ge)?.g;
        let tm = threshold_multipartite(&s, g, scan.tol)?;
        println!("{lambda:>6.1} {:>10.4} {:>10.4} {:>10.4}", t12.t_th, t14.t_th, tm.t_th);
    }
    Ok(())
}
