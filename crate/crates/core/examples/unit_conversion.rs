//! Converts kT = 1 and λ = 1 to kelvin and tesla for J between 1 μeV and 1 meV.

use spinxy::convert_units;

fn main() -> spinxy::Result<()> {
    for j_mev in [1e-3, 1e-2, 1e-1, 1.0] {
        let u = convert_units(1.0, j_mev, 1.0, 1.0)?;
        println!("J = {j_mev:>6} meV  ->  T = {:.4e} K, B = {:.4e} T", u.kelvin, u.tesla);
    }
    Ok(())
}
