//! Protocol profile database.
//!
//! Ships the six built-in wireless protocol profiles (Bluetooth, UWB,
//! ZigBee, Wi-Fi, Wi-Max, GSM/GPRS) as structured data and loads
//! user-supplied profile files (UTF-8 JSON, see `schemas/profile.schema.json`).
//! All quantities are SI base units: bits/second, seconds, bytes, bits,
//! hertz, watts, meters, volts, amperes.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ber::ModulationScheme;

/// Relative tolerance for the `bit_time * max_data_rate == 1` invariant.
/// Published parameter tables round bit time and data rate independently,
/// so the product can be off by up to 1%.
pub const BIT_TIME_RATE_TOLERANCE: f64 = 0.01;

/// Closed interval `[min, max]` in meters, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeInterval(pub f64, pub f64);

impl RangeInterval {
    pub fn min(&self) -> f64 {
        self.0
    }

    pub fn max(&self) -> f64 {
        self.1
    }
}

/// Power consumption characteristics of a representative chipset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChipsetSpec {
    pub chip_name: String,
    /// Supply voltage in volts.
    pub vdd: f64,
    /// Transmit current draw in amperes.
    pub i_tx: f64,
    /// Receive current draw in amperes.
    pub i_rx: f64,
    /// Bit rate the chipset achieves, in bits/second.
    pub chip_bit_rate: f64,
}

/// One protocol's full parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolProfile {
    pub name: String,
    /// Maximum data rate in bits/second.
    pub max_data_rate: f64,
    /// Bit time in seconds. Must agree with `1 / max_data_rate` to 1%.
    pub bit_time: f64,
    /// Maximum payload per packet, in bytes.
    pub max_payload: u64,
    /// Per-packet overhead, in bits.
    pub overhead_bits: u64,
    /// Representative carrier frequency in hertz, used for propagation math.
    pub carrier_frequency: f64,
    /// Nominal transmitted power in watts.
    pub nominal_tx_power: f64,
    /// Nominal coverage range interval `[min, max]` in meters.
    pub nominal_range: RangeInterval,
    /// Maximum number of nodes in a basic cell.
    pub max_cell_nodes: u64,
    /// Modulation schemes the protocol uses that this toolkit models.
    pub modulations: Vec<ModulationScheme>,
    pub chipset: ChipsetSpec,
    /// Descriptive characteristics (encryption, authentication, spreading,
    /// basic cell, ...). Informational only; never used in computations.
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
}

/// One violated invariant found by [`validate_profile`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationIssue {
    /// Field (or field pair) that violates an invariant.
    pub field: String,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Validation outcome: empty iff every invariant holds.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    fn flag(&mut self, field: &str, message: impl Into<String>) {
        self.issues.push(ValidationIssue {
            field: field.to_string(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for issue in &self.issues {
            if !first {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
            first = false;
        }
        Ok(())
    }
}

/// Error loading a profile file.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// Malformed JSON or unknown/mistyped field, with line/column locus.
    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    /// A parsed profile violates a `ProtocolProfile` invariant.
    #[error("invalid profile \"{name}\": {report}")]
    Validation {
        name: String,
        report: ValidationReport,
    },
}

/// Immutable, name-keyed set of validated profiles.
///
/// Iteration order is alphabetical by name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProfileSet {
    profiles: BTreeMap<String, ProtocolProfile>,
}

impl ProfileSet {
    pub fn get(&self, name: &str) -> Option<&ProtocolProfile> {
        self.profiles.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.profiles.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProtocolProfile> {
        self.profiles.values()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Inserts a profile, shadowing any existing profile with the same name.
    pub fn insert(&mut self, profile: ProtocolProfile) {
        self.profiles.insert(profile.name.clone(), profile);
    }
}

/// Checks every `ProtocolProfile` invariant, one issue per violation.
pub fn validate_profile(p: &ProtocolProfile) -> ValidationReport {
    let mut report = ValidationReport::default();
    if p.name.is_empty() {
        report.flag("name", "must not be empty");
    }
    if !(p.max_data_rate > 0.0) {
        report.flag("max_data_rate", "must be > 0");
    }
    if p.max_payload < 1 {
        report.flag("max_payload", "must be >= 1 byte");
    }
    if !(p.bit_time > 0.0) {
        report.flag("bit_time", "must be > 0");
    } else if p.max_data_rate > 0.0 {
        let product = p.bit_time * p.max_data_rate;
        // the small slack keeps profiles sitting exactly on the tolerance
        // boundary (9 ns at 110 Mb/s is a 1.00% mismatch) from being
        // rejected by floating-point rounding
        if (product - 1.0).abs() > BIT_TIME_RATE_TOLERANCE * (1.0 + 1e-9) {
            report.flag(
                "bit_time",
                format!(
                    "bit_time * max_data_rate = {product:.4}, \
                     expected 1 within {BIT_TIME_RATE_TOLERANCE}"
                ),
            );
        }
    }
    if !(p.carrier_frequency > 0.0) {
        report.flag("carrier_frequency", "must be > 0");
    }
    if !(p.nominal_tx_power > 0.0) {
        report.flag("nominal_tx_power", "must be > 0");
    }
    if !(p.nominal_range.min() > 0.0 && p.nominal_range.max() > 0.0) {
        report.flag("nominal_range", "both endpoints must be > 0");
    } else if p.nominal_range.min() > p.nominal_range.max() {
        report.flag(
            "nominal_range",
            format!(
                "min {} exceeds max {}",
                p.nominal_range.min(),
                p.nominal_range.max()
            ),
        );
    }
    if p.max_cell_nodes < 1 {
        report.flag("max_cell_nodes", "must be >= 1");
    }
    let c = &p.chipset;
    for (field, value) in [
        ("chipset.vdd", c.vdd),
        ("chipset.i_tx", c.i_tx),
        ("chipset.i_rx", c.i_rx),
        ("chipset.chip_bit_rate", c.chip_bit_rate),
    ] {
        if !(value > 0.0) {
            report.flag(field, "must be > 0");
        }
    }
    for m in &p.modulations {
        if let Err(e) = m.validate() {
            report.flag("modulations", e);
        }
    }
    report
}

/// Returns the six built-in profiles, keyed by canonical name.
///
/// Deterministic and side-effect free: repeated calls yield equal sets.
pub fn load_builtin_profiles() -> ProfileSet {
    let mut set = ProfileSet::default();
    for profile in builtin_profiles() {
        debug_assert!(validate_profile(&profile).is_empty());
        set.insert(profile);
    }
    set
}

/// Parses a JSON profile file and merges it over the built-ins.
///
/// User profiles may shadow built-ins by name. Unknown fields are
/// rejected rather than ignored, to catch typos.
pub fn load_profile_file(path: impl AsRef<Path>) -> Result<ProfileSet, LoadError> {
    let mut set = load_builtin_profiles();
    merge_profile_file(&mut set, path)?;
    Ok(set)
}

/// Parses a JSON profile file into an existing set.
pub fn merge_profile_file(set: &mut ProfileSet, path: impl AsRef<Path>) -> Result<(), LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    for profile in parse_profiles(&text, &path.display().to_string())? {
        set.insert(profile);
    }
    Ok(())
}

/// Parses a JSON document (top-level array of profile objects) and
/// validates every profile.
pub fn parse_profiles(text: &str, locus: &str) -> Result<Vec<ProtocolProfile>, LoadError> {
    let profiles: Vec<ProtocolProfile> =
        serde_json::from_str(text).map_err(|e| LoadError::Parse {
            path: locus.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    for profile in &profiles {
        let report = validate_profile(profile);
        if !report.is_empty() {
            return Err(LoadError::Validation {
                name: profile.name.clone(),
                report,
            });
        }
    }
    Ok(profiles)
}

/// Serializes profiles to the same JSON document format `parse_profiles`
/// accepts (round-trips to an equal profile list).
pub fn write_profiles(profiles: &[ProtocolProfile]) -> String {
    serde_json::to_string_pretty(profiles).expect("profile serialization cannot fail")
}

fn meta(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn builtin_profiles() -> Vec<ProtocolProfile> {
    use ModulationScheme::*;
    vec![
        ProtocolProfile {
            name: "bluetooth".into(),
            max_data_rate: 0.72e6,
            bit_time: 1.39e-6,
            max_payload: 339, // DH5
            overhead_bits: 158,
            carrier_frequency: 2.4e9,
            nominal_tx_power: 0.1,
            nominal_range: RangeInterval(10.0, 10.0),
            max_cell_nodes: 8,
            modulations: vec![Gfsk, Dpsk8],
            chipset: ChipsetSpec {
                chip_name: "BlueCore2".into(),
                vdd: 1.8,
                i_tx: 0.057,
                i_rx: 0.047,
                chip_bit_rate: 0.72e6,
            },
            metadata: meta(&[
                ("standard", "IEEE 802.15.1"),
                ("frequency_band", "2.4 GHz"),
                ("modulation_type", "GFSK, CPFSK, 8-DPSK, pi/4-DQPSK"),
                ("spreading", "FHSS"),
                ("basic_cell", "Piconet"),
                ("encryption", "E0 stream cipher"),
                ("authentication", "Shared secret"),
            ]),
        },
        ProtocolProfile {
            name: "uwb".into(),
            max_data_rate: 110e6,
            bit_time: 0.009e-6,
            max_payload: 2044,
            overhead_bits: 42 * 8,
            carrier_frequency: 3.1e9,
            nominal_tx_power: 0.04,
            nominal_range: RangeInterval(10.0, 102.0),
            max_cell_nodes: 236,
            modulations: vec![BpskFamily, Pam4],
            chipset: ChipsetSpec {
                chip_name: "XS110".into(),
                vdd: 3.3,
                i_tx: 0.227,
                i_rx: 0.227,
                chip_bit_rate: 114e6,
            },
            metadata: meta(&[
                ("standard", "IEEE 802.15.3"),
                ("frequency_band", "3.1-10.6 GHz"),
                ("modulation_type", "BPSK, PPM, PAM, OOK, PWM"),
                ("spreading", "DS-UWB, MB-OFDM"),
                ("basic_cell", "Piconet"),
                ("encryption", "AES block cipher (CTR)"),
                ("authentication", "CBC-MAC (CCM)"),
            ]),
        },
        ProtocolProfile {
            name: "zigbee".into(),
            max_data_rate: 0.25e6,
            bit_time: 4e-6,
            max_payload: 102,
            overhead_bits: 31 * 8,
            carrier_frequency: 2.4e9,
            nominal_tx_power: 0.0063,
            nominal_range: RangeInterval(10.0, 1000.0),
            max_cell_nodes: 65_000,
            modulations: vec![BpskFamily],
            chipset: ChipsetSpec {
                chip_name: "CC2430".into(),
                vdd: 3.0,
                i_tx: 0.0247,
                i_rx: 0.027,
                chip_bit_rate: 0.25e6,
            },
            metadata: meta(&[
                ("standard", "IEEE 802.15.4"),
                ("frequency_band", "868/915 MHz; 2.4 GHz"),
                ("modulation_type", "BPSK, QPSK, O-QPSK"),
                ("spreading", "DSSS"),
                ("basic_cell", "Star"),
                ("encryption", "AES block cipher (CTR)"),
                ("authentication", "CBC-MAC (ext. of CCM)"),
            ]),
        },
        ProtocolProfile {
            name: "wifi".into(),
            max_data_rate: 54e6,
            bit_time: 0.0185e-6,
            max_payload: 2312,
            overhead_bits: 58 * 8,
            carrier_frequency: 2.4e9,
            nominal_tx_power: 1.0,
            nominal_range: RangeInterval(10.0, 100.0),
            max_cell_nodes: 2007,
            modulations: vec![BpskFamily, Qam16, Ofdm(Box::new(Qam16))],
            chipset: ChipsetSpec {
                chip_name: "CX53111".into(),
                vdd: 3.3,
                i_tx: 0.219,
                i_rx: 0.215,
                chip_bit_rate: 54e6,
            },
            metadata: meta(&[
                ("standard", "IEEE 802.11a/b/g"),
                ("frequency_band", "2.4; 5 GHz"),
                ("modulation_type", "BPSK, QPSK, OFDM, M-QAM"),
                ("spreading", "MC-DSSS, CCK, OFDM"),
                ("basic_cell", "BSS"),
                ("encryption", "RC4 (WEP), AES block cipher"),
                ("authentication", "WPA2 (802.11i)"),
            ]),
        },
        ProtocolProfile {
            name: "wimax".into(),
            max_data_rate: 70e6,
            bit_time: 0.0143e-6,
            max_payload: 2700,
            overhead_bits: 40 * 8,
            carrier_frequency: 5.1e9,
            nominal_tx_power: 0.25,
            nominal_range: RangeInterval(300.0, 49_000.0),
            max_cell_nodes: 1600,
            modulations: vec![BpskFamily, Qam16, Ofdm(Box::new(Qam16))],
            chipset: ChipsetSpec {
                chip_name: "AT86RF535A".into(),
                vdd: 3.3,
                i_tx: 0.320,
                i_rx: 0.200,
                chip_bit_rate: 70e6,
            },
            metadata: meta(&[
                ("standard", "IEEE 802.16"),
                ("frequency_band", "2.4; 5.1-66 GHz"),
                ("modulation_type", "QAM16/64, QPSK, BPSK, OFDM"),
                ("spreading", "OFDM, OFDMA"),
                ("basic_cell", "Single-cell"),
                ("encryption", "AES-CCM cipher"),
                ("authentication", "EAP-SIM, EAP-AKA, EAP-TLS or X.509"),
            ]),
        },
        ProtocolProfile {
            name: "gprs".into(),
            max_data_rate: 0.168e6,
            bit_time: 5.95e-6,
            max_payload: 1500, // TCP/IP
            overhead_bits: 52 * 8,
            carrier_frequency: 900e6,
            nominal_tx_power: 2.0,
            nominal_range: RangeInterval(2000.0, 35_000.0),
            max_cell_nodes: 1000,
            modulations: vec![Gmsk, Psk8],
            chipset: ChipsetSpec {
                chip_name: "SIM300".into(),
                vdd: 3.0,
                i_tx: 0.350,
                i_rx: 0.230,
                chip_bit_rate: 0.164e6, // GSM 900 DATA mode
            },
            metadata: meta(&[
                ("standard", "850-900 DCS PCS"),
                ("frequency_band", "850/900; 1800/1900 MHz"),
                ("modulation_type", "GMSK, 8PSK"),
                ("spreading", "TDMA, DSSS"),
                ("basic_cell", "Single-cell"),
                ("encryption", "GEA, MS-SGSN, MS-host"),
                ("authentication", "PIN; ISP; GSM A3; RADIUS"),
            ]),
        },
    ]
}
