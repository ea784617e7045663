//! Conversion of dimensionless temperatures and fields to laboratory units.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Boltzmann constant in eV/K.
pub const K_B_EV_PER_K: f64 = 8.617333e-5;
/// Bohr magneton in eV/T.
pub const MU_B_EV_PER_T: f64 = 5.788382e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalUnits {
    pub kelvin: f64,
    pub tesla: f64,
}

/// Converts kT and h, both in units of J, given J in meV.
///
/// The field uses B = h / (g μ_B); `g_factor = 1` reproduces the usual
/// "J = 1 μeV ↔ 1.7×10⁻² T" correspondence, pass 2 for free electrons.
pub fn convert_units(kt_in_j: f64, j_mev: f64, field_in_j: f64, g_factor: f64) -> Result<PhysicalUnits> {
    if !(j_mev > 0.0) || !j_mev.is_finite() {
        return invalid(format!("exchange constant J must be > 0 meV, got {j_mev}"));
    }
    if !(g_factor > 0.0) {
        return invalid(format!("g-factor must be > 0, got {g_factor}"));
    }
    let j_ev = j_mev * 1e-3;
    Ok(PhysicalUnits { kelvin: kt_in_j * j_ev / K_B_EV_PER_K, tesla: field_in_j * j_ev / (g_factor * MU_B_EV_PER_T) })
}
