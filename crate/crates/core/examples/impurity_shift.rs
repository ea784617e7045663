//! How the spoke impurity α moves the field above which every pair on the
//! isotropic star (γ = 0, kT = 0) becomes separable.

use spinxy::{make_ensemble, pair_eof, LatticeKind, LatticeSpec, Spectrum};

const PAIRS: [(usize, usize); 4] = [(1, 2), (1, 4), (1, 5), (1, 7)];

fn vanishing_field(alpha: f64) -> spinxy::Result<f64> {
    let mut last = 0.0;
    for k in 0..=400 {
        let lambda = 0.01 * k as f64;
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 0.0, lambda).with_alpha(alpha))?;
        let ens = make_ensemble(&s, 0.0)?;
        for (i, j) in PAIRS {
            if pair_eof(&s, &ens, i, j)? > 1e-6 {
                last = lambda;
            }
        }
    }
    Ok(last)
}

fn main() -> spinxy::Result<()> {
    for alpha in [-0.5, 0.0, 0.5] {
        println!("alpha = {alpha:+.1}: separable above lambda = {:.2}", vanishing_field(alpha)?);
    }
    Ok(())
}
