//! Entanglement of formation between site 1 and its neighbours on the star
//! (nearest ring neighbour 2, centre 4, opposite ring site 7).

use spinxy::{make_ensemble, pair_eof, LatticeKind, LatticeSpec, Spectrum};

fn main() -> spinxy::Result<()> {
    let pairs = [(1, 2), (1, 4), (1, 7)];
    println!("gamma = 1, kT = 0.1");
    println!("{:>6} {:>10} {:>10} {:>10}", "lambda", "EF(1,2)", "EF(1,4)", "EF(1,7)");
    for k in 0..=10 {
        let lambda = 0.5 * k as f64;
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 1.0, lambda))?;
        let ens = make_ensemble(&s, 0.1)?;
        let ef: Vec<f64> = pairs.iter().map(|&(i, j)| pair_eof(&s, &ens, i, j)).collect::<spinxy::Result<_>>()?;
        println!("{lambda:>6.2} {:>10.5} {:>10.5} {:>10.5}", ef[0], ef[1], ef[2]);
    }
    Ok(())
}
