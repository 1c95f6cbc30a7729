//! Regression reports against the reference comparison tables: coding
//! efficiencies at 10,000 bytes and the Eb/N0 values that push the BER
//! down to 1e-6.

use linkgauge::ber::{ebn0_for_target, ModulationScheme};
use linkgauge::linkmodels::{coding_efficiency, PacketizationMode};
use linkgauge::registry::ProfileSet;

/// One compared row.
pub struct RegressRow {
    pub label: String,
    pub reference: f64,
    pub computed: f64,
    /// computed - reference.
    pub delta: f64,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
    /// The reference value is not reproducible from its own printed
    /// parameters; the mismatch is documented, not an error.
    ExpectedFail,
    /// The reference value is known to deviate from the adopted exact
    /// expression; the row passes iff the delta matches the documented
    /// deviation.
    ExpectedDeviation,
}

impl RowStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::ExpectedFail => "EXPECTED-FAIL",
            RowStatus::ExpectedDeviation => "EXPECTED-DEVIATION",
        }
    }
}

/// True iff no row is an outright failure.
pub fn all_ok(rows: &[RegressRow]) -> bool {
    rows.iter().all(|r| r.status != RowStatus::Fail)
}

/// Coding-efficiency regression at 10,000 bytes, ±0.01 percentage point.
///
/// The wimax reference value only reproduces with the exact packet
/// ratio; every other row uses whole packets. The gprs reference value
/// (80.86 %) does not follow from its printed payload/overhead at any
/// packetization and is flagged EXPECTED-FAIL.
pub fn table3(profiles: &ProfileSet) -> Vec<RegressRow> {
    const N_DATA: u64 = 10_000;
    const TOL_PP: f64 = 0.01;
    let rows = [
        ("bluetooth", PacketizationMode::Ceil, 94.41, false),
        ("uwb", PacketizationMode::Ceil, 97.94, false),
        ("zigbee", PacketizationMode::Ceil, 76.52, false),
        ("wifi", PacketizationMode::Ceil, 97.18, false),
        ("wimax", PacketizationMode::Fractional, 98.54, false),
        ("gprs", PacketizationMode::Ceil, 80.86, true),
    ];
    rows.iter()
        .map(|(name, mode, reference, expected_fail)| {
            let profile = profiles.get(name).expect("builtin profile");
            let computed = coding_efficiency(N_DATA, profile, *mode).expect("valid profile");
            let delta = computed - reference;
            let status = if *expected_fail {
                RowStatus::ExpectedFail
            } else if delta.abs() <= TOL_PP {
                RowStatus::Pass
            } else {
                RowStatus::Fail
            };
            RegressRow {
                label: format!("{name} ({:?})", mode).to_lowercase(),
                reference: *reference,
                computed,
                delta,
                status,
            }
        })
        .collect()
}

enum Table7Class {
    /// Must match the reference within ±1.0 dB.
    Anchor,
    /// The reference deviates from the exact expression by a documented
    /// amount; the computed delta must match it within ±0.3 dB.
    Deviation(f64),
}

/// Eb/N0-at-1e-6 regression against the reference threshold table.
pub fn table7() -> Vec<RegressRow> {
    use ModulationScheme::*;
    const TOL_DB: f64 = 1.0;
    const TOL_DELTA_DB: f64 = 0.3;
    let rows = [
        ("b-oq-qpsk", BpskFamily, 7.8, Table7Class::Deviation(2.7)),
        ("gmsk", Gmsk, 12.7, Table7Class::Anchor),
        ("fsk", CoherentBfsk, 13.3, Table7Class::Anchor),
        ("8psk", Psk8, 13.8, Table7Class::Anchor),
        ("ofdm(16qam)", Ofdm(Box::new(Qam16)), 14.3, Table7Class::Anchor),
        ("16qam", Qam16, 14.8, Table7Class::Anchor),
        ("gfsk", Gfsk, 15.7, Table7Class::Anchor),
        ("4pam", Pam4, 17.6, Table7Class::Deviation(-3.2)),
        ("8dpsk", Dpsk8, 22.6, Table7Class::Deviation(-5.8)),
    ];
    rows.into_iter()
        .map(|(label, scheme, reference, class)| {
            let computed = ebn0_for_target(&scheme, 1e-6).expect("bracketed target");
            let delta = computed - reference;
            let status = match class {
                Table7Class::Anchor => {
                    if delta.abs() <= TOL_DB {
                        RowStatus::Pass
                    } else {
                        RowStatus::Fail
                    }
                }
                Table7Class::Deviation(documented) => {
                    if (delta - documented).abs() <= TOL_DELTA_DB {
                        RowStatus::ExpectedDeviation
                    } else {
                        RowStatus::Fail
                    }
                }
            };
            RegressRow {
                label: label.to_string(),
                reference,
                computed,
                delta,
                status,
            }
        })
        .collect()
}
