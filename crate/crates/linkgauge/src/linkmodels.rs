//! Link-level analytic models: transmission time, coding efficiency,
//! Friis free-space power/range, and the two-ray ground-reflection model.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::DomainError;
use crate::registry::ProtocolProfile;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Wavelength in meters for a carrier frequency in hertz.
pub fn wavelength(frequency_hz: f64) -> f64 {
    SPEED_OF_LIGHT / frequency_hz
}

/// How the per-packet overhead count is derived from the data size.
///
/// Published efficiency tables mix both conventions: most rows assume a
/// whole (ceiling) packet count, some divide exactly. `Ceil` is the
/// physically meaningful default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PacketizationMode {
    Ceil,
    Fractional,
}

/// Free-space link budget inputs for the Friis equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudgetParams {
    /// Transmitted power P_t in watts.
    pub tx_power: f64,
    /// Received power P_r in watts (the target when solving for range).
    pub rx_power: f64,
    /// Transmitting antenna gain G_t (dimensionless).
    pub gain_tx: f64,
    /// Receiving antenna gain G_r (dimensionless).
    pub gain_rx: f64,
    /// Wavelength in meters.
    pub wavelength: f64,
}

/// Two-ray ground-reflection model inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationParams {
    pub tx_power: f64,
    pub gain_tx: f64,
    pub gain_rx: f64,
    pub wavelength: f64,
    /// System path loss factor L >= 1 (dimensionless).
    pub path_loss: f64,
    /// Transmitter antenna height in meters.
    pub h_tx: f64,
    /// Receiver antenna height in meters.
    pub h_rx: f64,
}

/// Number of packets needed to carry `n_data` bytes with the given
/// maximum payload. `Ceil` counts whole packets; `Fractional` is the
/// exact ratio.
pub fn packet_count(
    n_data: u64,
    max_payload: u64,
    mode: PacketizationMode,
) -> Result<f64, DomainError> {
    if max_payload < 1 {
        return Err(DomainError::new(format!(
            "max_payload must be >= 1 byte, got {max_payload}"
        )));
    }
    Ok(match mode {
        PacketizationMode::Ceil => n_data.div_ceil(max_payload) as f64,
        PacketizationMode::Fractional => n_data as f64 / max_payload as f64,
    })
}

/// Time in seconds to transmit `n_data` bytes with a profile:
/// `(8 n_data + packets * overhead_bits) * bit_time + t_prop`.
///
/// `t_prop` is the propagation delay between the two nodes; pass 0 to
/// neglect it.
pub fn transmission_time(
    n_data: u64,
    profile: &ProtocolProfile,
    mode: PacketizationMode,
    t_prop: f64,
) -> Result<f64, DomainError> {
    if !(t_prop >= 0.0) {
        return Err(DomainError::new(format!("t_prop must be >= 0, got {t_prop}")));
    }
    let packets = packet_count(n_data, profile.max_payload, mode)?;
    let total_bits = 8.0 * n_data as f64 + packets * profile.overhead_bits as f64;
    Ok(total_bits * profile.bit_time + t_prop)
}

/// Payload bytes as a percentage of total transmitted bytes including
/// per-packet overhead: `100 * n_data / (n_data + packets * overhead / 8)`.
pub fn coding_efficiency(
    n_data: u64,
    profile: &ProtocolProfile,
    mode: PacketizationMode,
) -> Result<f64, DomainError> {
    if n_data < 1 {
        return Err(DomainError::new("n_data must be >= 1 byte"));
    }
    let packets = packet_count(n_data, profile.max_payload, mode)?;
    let overhead_bytes = packets * profile.overhead_bits as f64 / 8.0;
    Ok(100.0 * n_data as f64 / (n_data as f64 + overhead_bytes))
}

/// Friis free-space received power:
/// `P_r = P_t G_t G_r (lambda / (4 pi D))^2`.
pub fn friis_received_power(params: &LinkBudgetParams, distance: f64) -> Result<f64, DomainError> {
    check_positive(&[
        ("tx_power", params.tx_power),
        ("gain_tx", params.gain_tx),
        ("gain_rx", params.gain_rx),
        ("wavelength", params.wavelength),
        ("distance", distance),
    ])?;
    let ratio = params.wavelength / (4.0 * PI * distance);
    Ok(params.tx_power * params.gain_tx * params.gain_rx * ratio * ratio)
}

/// Range at which the Friis received power falls to `rx_power`:
/// `D = (lambda / 4 pi) sqrt(P_t G_t G_r / P_r)`.
pub fn friis_range(params: &LinkBudgetParams) -> Result<f64, DomainError> {
    check_positive(&[
        ("tx_power", params.tx_power),
        ("rx_power", params.rx_power),
        ("gain_tx", params.gain_tx),
        ("gain_rx", params.gain_rx),
        ("wavelength", params.wavelength),
    ])?;
    let ratio = params.tx_power * params.gain_tx * params.gain_rx / params.rx_power;
    Ok(params.wavelength / (4.0 * PI) * ratio.sqrt())
}

/// Crossover distance of the two-ray model:
/// `d_c = 4 pi sqrt(L) h_t h_r / lambda`.
pub fn two_ray_crossover(params: &PropagationParams) -> Result<f64, DomainError> {
    check_two_ray(params)?;
    Ok(4.0 * PI * params.path_loss.sqrt() * params.h_tx * params.h_rx / params.wavelength)
}

/// Two-ray received power: Friis (with path loss L) below the crossover
/// distance, `P_t G_t G_r h_t^2 h_r^2 / d^4` at and beyond it. The two
/// branches agree at the crossover.
pub fn two_ray_received_power(
    params: &PropagationParams,
    distance: f64,
) -> Result<f64, DomainError> {
    check_two_ray(params)?;
    if !(distance > 0.0) {
        return Err(DomainError::new(format!(
            "distance must be > 0, got {distance}"
        )));
    }
    let d_c = two_ray_crossover(params)?;
    let g = params.tx_power * params.gain_tx * params.gain_rx;
    if distance < d_c {
        let ratio = params.wavelength / (4.0 * PI * distance);
        Ok(g * ratio * ratio / params.path_loss)
    } else {
        let h2 = params.h_tx * params.h_tx * params.h_rx * params.h_rx;
        Ok(g * h2 / (distance * distance * distance * distance))
    }
}

fn check_two_ray(params: &PropagationParams) -> Result<(), DomainError> {
    check_positive(&[
        ("tx_power", params.tx_power),
        ("gain_tx", params.gain_tx),
        ("gain_rx", params.gain_rx),
        ("wavelength", params.wavelength),
        ("h_tx", params.h_tx),
        ("h_rx", params.h_rx),
    ])?;
    if !(params.path_loss >= 1.0) {
        return Err(DomainError::new(format!(
            "path_loss must be >= 1, got {}",
            params.path_loss
        )));
    }
    Ok(())
}

fn check_positive(fields: &[(&str, f64)]) -> Result<(), DomainError> {
    for (name, value) in fields {
        if !(*value > 0.0) {
            return Err(DomainError::new(format!("{name} must be > 0, got {value}")));
        }
    }
    Ok(())
}
