//! Lowest levels of the star lattice for a few fields.
//!
//! Run with `cargo run --example spectrum -- 0.5` to pick γ (default 1).

use spinxy::{LatticeKind, LatticeSpec, Spectrum};

fn main() -> spinxy::Result<()> {
    let gamma: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    println!("{:>6} {:>12} {:>12} {:>12} {:>4}", "lambda", "E0", "E1", "E2", "g0");
    for lambda in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, gamma, lambda))?;
        let e = &s.energies;
        println!("{lambda:>6.2} {:>12.6} {:>12.6} {:>12.6} {:>4}", e[0], e[1], e[2], s.ground_degeneracy);
    }
    Ok(())
}
