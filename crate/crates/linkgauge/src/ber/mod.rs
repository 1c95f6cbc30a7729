//! Bit-error-rate models for AWGN channels.
//!
//! Closed-form/analytic BER curves for the nine modulations the protocol
//! database uses, an Eb/N0 threshold solver, and a seeded Monte Carlo
//! baseband simulator that acts as an independent oracle for the analytic
//! curves.

mod analytic;
mod montecarlo;
mod qfunc;

pub use analytic::{ber_analytic, gmsk_ber, GMSK_ALPHA_BT03};
pub use montecarlo::{ber_monte_carlo, McResult};
pub use qfunc::q_function;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::DomainError;

/// Modulation schemes with an analytic BER parameterization.
///
/// `BpskFamily` covers BPSK, QPSK and OQPSK, which share the same per-bit
/// error probability. `Ofdm` inherits the BER of its subcarrier scheme
/// over AWGN.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ModulationScheme {
    BpskFamily,
    Gmsk,
    CoherentBfsk,
    Gfsk,
    Psk8,
    Dpsk8,
    Pam4,
    Qam16,
    Ofdm(Box<ModulationScheme>),
}

impl ModulationScheme {
    /// All nine schemes, OFDM with its default 16-QAM subcarrier.
    pub fn all() -> Vec<ModulationScheme> {
        use ModulationScheme::*;
        vec![
            BpskFamily,
            Gmsk,
            CoherentBfsk,
            Gfsk,
            Psk8,
            Dpsk8,
            Pam4,
            Qam16,
            Ofdm(Box::new(Qam16)),
        ]
    }

    /// Schemes the Monte Carlo simulator supports (everything but GMSK,
    /// which needs pulse shaping and trellis detection).
    pub fn is_linear(&self) -> bool {
        match self {
            ModulationScheme::Gmsk => false,
            ModulationScheme::Ofdm(sub) => sub.is_linear(),
            _ => true,
        }
    }

    /// Checks the OFDM subcarrier invariant: the subcarrier must be a
    /// linear scheme (not GMSK, not OFDM).
    pub fn validate(&self) -> Result<(), String> {
        if let ModulationScheme::Ofdm(sub) = self {
            match sub.as_ref() {
                ModulationScheme::Ofdm(_) => {
                    Err("ofdm subcarrier cannot itself be ofdm".to_string())
                }
                ModulationScheme::Gmsk => {
                    Err("ofdm subcarrier must be a linear scheme, not gmsk".to_string())
                }
                _ => Ok(()),
            }
        } else {
            Ok(())
        }
    }

    pub fn bits_per_symbol(&self) -> u32 {
        use ModulationScheme::*;
        match self {
            BpskFamily | Gmsk | CoherentBfsk | Gfsk => 1,
            Pam4 => 2,
            Psk8 | Dpsk8 => 3,
            Qam16 => 4,
            Ofdm(sub) => sub.bits_per_symbol(),
        }
    }
}

impl fmt::Display for ModulationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModulationScheme::*;
        match self {
            BpskFamily => write!(f, "bpsk"),
            Gmsk => write!(f, "gmsk"),
            CoherentBfsk => write!(f, "fsk"),
            Gfsk => write!(f, "gfsk"),
            Psk8 => write!(f, "8psk"),
            Dpsk8 => write!(f, "8dpsk"),
            Pam4 => write!(f, "4pam"),
            Qam16 => write!(f, "16qam"),
            Ofdm(sub) => write!(f, "ofdm({sub})"),
        }
    }
}

impl FromStr for ModulationScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use ModulationScheme::*;
        let lower = s.trim().to_ascii_lowercase();
        let scheme = match lower.as_str() {
            "bpsk" | "qpsk" | "oqpsk" | "b-oq-qpsk" => BpskFamily,
            "gmsk" => Gmsk,
            "fsk" | "bfsk" => CoherentBfsk,
            "gfsk" => Gfsk,
            "8psk" => Psk8,
            "8dpsk" => Dpsk8,
            "4pam" => Pam4,
            "16qam" => Qam16,
            "ofdm" => Ofdm(Box::new(Qam16)),
            other => {
                if let Some(inner) = other
                    .strip_prefix("ofdm(")
                    .and_then(|rest| rest.strip_suffix(')'))
                {
                    let sub: ModulationScheme = inner.parse()?;
                    let scheme = Ofdm(Box::new(sub));
                    scheme.validate()?;
                    scheme
                } else {
                    return Err(format!("unknown modulation scheme \"{s}\""));
                }
            }
        };
        Ok(scheme)
    }
}

impl TryFrom<String> for ModulationScheme {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ModulationScheme> for String {
    fn from(m: ModulationScheme) -> String {
        m.to_string()
    }
}

/// One sample of a BER-vs-Eb/N0 curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub ber: f64,
}

#[derive(Debug, Error)]
pub enum BerError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    /// The target BER is not reached anywhere in the search bracket.
    #[error("target ber {target} not bracketed in [{lo_db} dB, {hi_db} dB]")]
    NoBracket { target: f64, lo_db: f64, hi_db: f64 },
    #[error("scheme {0} is not supported by the Monte Carlo simulator")]
    UnsupportedScheme(ModulationScheme),
}

/// Bisection bracket for [`ebn0_for_target`], in dB.
pub const THRESHOLD_BRACKET_DB: (f64, f64) = (-10.0, 40.0);

/// Solves `ber_analytic(scheme, ebn0) == target_ber` by bisection,
/// exploiting the strict monotonicity of every BER curve.
///
/// The result satisfies the target to 1e-9 relative.
pub fn ebn0_for_target(scheme: &ModulationScheme, target_ber: f64) -> Result<f64, BerError> {
    if !(target_ber > 0.0 && target_ber < 0.5) {
        return Err(DomainError::new(format!(
            "target_ber must be in (0, 0.5), got {target_ber}"
        ))
        .into());
    }
    let (mut lo, mut hi) = THRESHOLD_BRACKET_DB;
    // ber is decreasing in ebn0: ber(lo) must sit above target, ber(hi) below
    if ber_analytic(scheme, lo) < target_ber || ber_analytic(scheme, hi) > target_ber {
        return Err(BerError::NoBracket {
            target: target_ber,
            lo_db: lo,
            hi_db: hi,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let ber = ber_analytic(scheme, mid);
        if ((ber - target_ber) / target_ber).abs() <= 1e-12 {
            return Ok(mid);
        }
        if ber > target_ber {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Samples the analytic BER curve on `[start, stop]` with the given step.
pub fn ber_curve(
    scheme: &ModulationScheme,
    ebn0_start_db: f64,
    ebn0_stop_db: f64,
    step_db: f64,
) -> Result<Vec<BerPoint>, DomainError> {
    if !(ebn0_start_db < ebn0_stop_db) {
        return Err(DomainError::new(format!(
            "start {ebn0_start_db} dB must be below stop {ebn0_stop_db} dB"
        )));
    }
    if !(step_db > 0.0) {
        return Err(DomainError::new(format!(
            "step must be > 0 dB, got {step_db}"
        )));
    }
    let n = ((ebn0_stop_db - ebn0_start_db) / step_db).round() as usize;
    let mut points = Vec::with_capacity(n + 1);
    let mut k = 0usize;
    loop {
        let db = ebn0_start_db + k as f64 * step_db;
        if db > ebn0_stop_db + 1e-9 {
            break;
        }
        points.push(BerPoint {
            ebn0_db: db,
            ber: ber_analytic(scheme, db),
        });
        k += 1;
    }
    Ok(points)
}
