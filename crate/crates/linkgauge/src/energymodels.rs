//! Radio energy models: the generic distance-power-law model, the
//! first-order radio transmit energy model, and chipset power /
//! normalized energy figures.

use serde::{Deserialize, Serialize};

use crate::error::DomainError;
use crate::registry::ChipsetSpec;

/// First-order radio model constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyModelParams {
    /// Electronics energy E_Elec in joules/bit.
    pub e_elec: f64,
    /// Free-space amplifier energy in joules/bit/m^2.
    pub eps_fs: f64,
    /// Multipath amplifier energy in joules/bit/m^4.
    pub eps_amp: f64,
}

impl Default for EnergyModelParams {
    /// The widely used first-order radio simulation constants:
    /// 50 nJ/bit, 10 pJ/bit/m^2, 0.0013 pJ/bit/m^4.
    fn default() -> Self {
        EnergyModelParams {
            e_elec: 50e-9,
            eps_fs: 10e-12,
            eps_amp: 0.0013e-12,
        }
    }
}

/// Generic energy model parameters: `E = k * d^alpha + E_d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenericEnergyParams {
    /// Signal attenuation exponent, >= 2.
    pub alpha: f64,
    /// Fixed transmission energy cost E_d in joules.
    pub e_fixed: f64,
}

/// Chipset power draw in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChipsetPower {
    pub tx: f64,
    pub rx: f64,
}

/// Chipset energy per traffic volume, in millijoules per megabit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizedEnergy {
    pub tx_mj_per_mb: f64,
    pub rx_mj_per_mb: f64,
}

/// Generic distance-power-law energy: `k_packet * d^alpha + e_fixed`.
pub fn generic_energy(
    k_packet: f64,
    d: f64,
    params: &GenericEnergyParams,
) -> Result<f64, DomainError> {
    if params.alpha < 2.0 {
        return Err(DomainError::new(format!(
            "alpha must be >= 2, got {}",
            params.alpha
        )));
    }
    if !(k_packet >= 0.0) || !(d >= 0.0) || !(params.e_fixed >= 0.0) {
        return Err(DomainError::new(
            "k_packet, d and e_fixed must be >= 0".to_string(),
        ));
    }
    Ok(k_packet * d.powf(params.alpha) + params.e_fixed)
}

/// Crossover distance between the free-space and multipath branches:
/// `d_0 = sqrt(eps_fs / eps_amp)`.
pub fn crossover_distance(params: &EnergyModelParams) -> f64 {
    (params.eps_fs / params.eps_amp).sqrt()
}

/// First-order radio transmit energy for a `k_bits` message over
/// distance `d`:
///
/// ```text
/// E_TX = k eps_fs  d^2 + k E_Elec   (d <  d_0)
///        k eps_amp d^4 + k E_Elec   (d >= d_0)
/// ```
///
/// The branches agree exactly at `d_0`.
pub fn radio_tx_energy(k_bits: f64, d: f64, params: &EnergyModelParams) -> Result<f64, DomainError> {
    if !(k_bits >= 0.0) || !(d >= 0.0) {
        return Err(DomainError::new(format!(
            "k_bits and d must be >= 0, got k={k_bits}, d={d}"
        )));
    }
    let d0 = crossover_distance(params);
    let amp = if d < d0 {
        params.eps_fs * d * d
    } else {
        params.eps_amp * d * d * d * d
    };
    Ok(k_bits * amp + k_bits * params.e_elec)
}

/// Receive energy companion to [`radio_tx_energy`]: electronics only,
/// `k * E_Elec`. A standard extension of the first-order radio model;
/// not part of the published transmit-side regression.
pub fn radio_rx_energy(k_bits: f64, params: &EnergyModelParams) -> Result<f64, DomainError> {
    if !(k_bits >= 0.0) {
        return Err(DomainError::new(format!("k_bits must be >= 0, got {k_bits}")));
    }
    Ok(k_bits * params.e_elec)
}

/// Chipset power draw: `P = V_DD * I` per direction.
pub fn chipset_power(chip: &ChipsetSpec) -> ChipsetPower {
    ChipsetPower {
        tx: chip.vdd * chip.i_tx,
        rx: chip.vdd * chip.i_rx,
    }
}

/// Chipset power divided by achievable bit rate, in mJ/Mb
/// (1 J/bit = 1e9 mJ/Mb).
pub fn normalized_energy(chip: &ChipsetSpec) -> Result<NormalizedEnergy, DomainError> {
    if !(chip.chip_bit_rate > 0.0) {
        return Err(DomainError::new(format!(
            "chip_bit_rate must be > 0, got {}",
            chip.chip_bit_rate
        )));
    }
    let power = chipset_power(chip);
    Ok(NormalizedEnergy {
        tx_mj_per_mb: power.tx / chip.chip_bit_rate * 1e9,
        rx_mj_per_mb: power.rx / chip.chip_bit_rate * 1e9,
    })
}
