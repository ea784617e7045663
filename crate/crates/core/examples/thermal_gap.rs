//! Thermal energy gap ⟨E⟩ - E0 and partition sum as the temperature rises.

use spinxy::thermal::{energy_variance, shifted_partition_sum};
use spinxy::{make_ensemble, thermal_energy_gap, LatticeKind, LatticeSpec, Spectrum};

fn main() -> spinxy::Result<()> {
    let s = Spectrum::of(&LatticeSpec::new(LatticeKind::Star7, 1.0, 2.0))?;
    println!("{:>8} {:>12} {:>12} {:>12}", "kT", "gap", "var(E)", "Z~");
    for kt in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let ens = make_ensemble(&s, kt)?;
        println!(
            "{kt:>8.2} {:>12.6} {:>12.6} {:>12.4}",
            thermal_energy_gap(&s, &ens),
            energy_variance(&s, &ens),
            shifted_partition_sum(&s, kt)
        );
    }
    Ok(())
}
