//! Deterministic figure datasets: each function sweeps one model over a
//! documented grid and returns a tabular dataset ready for CSV or JSON
//! export. Everything is analytic, so repeated runs are byte-identical.

use serde_json::{json, Map, Value};

use linkgauge::ber::{ber_curve, ModulationScheme};
use linkgauge::energymodels::{chipset_power, normalized_energy, radio_tx_energy, EnergyModelParams};
use linkgauge::linkmodels::{
    friis_range, transmission_time, two_ray_received_power, wavelength, coding_efficiency,
    LinkBudgetParams, PacketizationMode, PropagationParams,
};
use linkgauge::registry::ProfileSet;

/// A figure dataset: named columns, free-parameter defaults (emitted as
/// `#` comments in CSV), and rows of values.
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub defaults: Vec<(&'static str, String)>,
    pub rows: Vec<Vec<Value>>,
}

impl Dataset {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.defaults {
            out.push_str(&format!("# {key} = {value}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut defaults = Map::new();
        for (key, value) in &self.defaults {
            defaults.insert(key.to_string(), Value::String(value.clone()));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, val) in self.columns.iter().zip(row) {
                    obj.insert(col.to_string(), val.clone());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "defaults": Value::Object(defaults), "rows": rows });
        let mut text = serde_json::to_string_pretty(&doc).expect("dataset serializes");
        text.push('\n');
        text
    }
}

fn csv_cell(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Log-spaced integer sizes in [lo, hi], deduplicated.
fn log_spaced_sizes(lo: u64, hi: u64, n: usize) -> Vec<u64> {
    let (llo, lhi) = ((lo as f64).log10(), (hi as f64).log10());
    let mut sizes: Vec<u64> = (0..n)
        .map(|i| {
            let exp = llo + (lhi - llo) * i as f64 / (n - 1) as f64;
            10f64.powf(exp).round() as u64
        })
        .collect();
    sizes.dedup();
    sizes
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(llo + (lhi - llo) * i as f64 / (n - 1) as f64))
        .collect()
}

/// Transmission time vs data size, all protocols, whole-packet mode.
pub fn fig4_txtime(profiles: &ProfileSet) -> Dataset {
    let mut rows = Vec::new();
    for size in log_spaced_sizes(1, 10_000, 40) {
        for p in profiles.iter() {
            let t = transmission_time(size, p, PacketizationMode::Ceil, 0.0)
                .expect("valid profile");
            rows.push(vec![json!(size), json!(p.name), json!(t * 1e6)]);
        }
    }
    Dataset {
        columns: vec!["data_size_bytes", "protocol", "txtime_us"],
        defaults: vec![("packetization", "ceil".to_string()), ("t_prop_s", "0".to_string())],
        rows,
    }
}

/// Free-space range vs carrier frequency at fixed powers and unit gains.
pub fn fig5_range_vs_freq() -> Dataset {
    const TX_POWER_W: f64 = 1.0;
    const RX_POWER_W: f64 = 1e-9;
    let mut rows = Vec::new();
    for step in 1..=60u32 {
        let frequency = 100e6 * step as f64;
        let params = LinkBudgetParams {
            tx_power: TX_POWER_W,
            rx_power: RX_POWER_W,
            gain_tx: 1.0,
            gain_rx: 1.0,
            wavelength: wavelength(frequency),
        };
        let range = friis_range(&params).expect("positive parameters");
        rows.push(vec![json!(frequency), json!(range)]);
    }
    Dataset {
        columns: vec!["frequency_hz", "range_m"],
        defaults: vec![
            ("tx_power_w", TX_POWER_W.to_string()),
            ("rx_power_w", RX_POWER_W.to_string()),
            ("gain_tx", "1".to_string()),
            ("gain_rx", "1".to_string()),
        ],
        rows,
    }
}

/// First-order radio transmit energy vs distance for several packet sizes.
pub fn fig6_energy_vs_range() -> Dataset {
    let params = EnergyModelParams::default();
    let mut rows = Vec::new();
    for bits in [500u64, 1000, 2000, 4000] {
        for step in 1..=60u32 {
            let d = 5.0 * step as f64;
            let e = radio_tx_energy(bits as f64, d, &params).expect("positive inputs");
            rows.push(vec![json!(bits), json!(d), json!(e)]);
        }
    }
    Dataset {
        columns: vec!["packet_bits", "distance_m", "energy_j"],
        defaults: vec![
            ("e_elec_j_per_bit", params.e_elec.to_string()),
            ("eps_fs_j_per_bit_m2", params.eps_fs.to_string()),
            ("eps_amp_j_per_bit_m4", params.eps_amp.to_string()),
        ],
        rows,
    }
}

/// Two-ray received power vs distance per protocol, at each protocol's
/// carrier frequency and nominal transmitted power.
pub fn fig7_rxpower(profiles: &ProfileSet) -> Dataset {
    let mut rows = Vec::new();
    for p in profiles.iter() {
        let params = PropagationParams {
            tx_power: p.nominal_tx_power,
            gain_tx: 1.0,
            gain_rx: 1.0,
            wavelength: wavelength(p.carrier_frequency),
            path_loss: 1.0,
            h_tx: 1.5,
            h_rx: 1.5,
        };
        for d in log_spaced(1.0, 20_000.0, 120) {
            let pr = two_ray_received_power(&params, d).expect("positive inputs");
            rows.push(vec![json!(p.name), json!(d), json!(pr)]);
        }
    }
    Dataset {
        columns: vec!["protocol", "distance_m", "rx_power_w"],
        defaults: vec![
            ("gain_tx", "1".to_string()),
            ("gain_rx", "1".to_string()),
            ("path_loss", "1".to_string()),
            ("h_tx_m", "1.5".to_string()),
            ("h_rx_m", "1.5".to_string()),
        ],
        rows,
    }
}

/// Chipset power draw per protocol and direction.
pub fn fig8_chipset_power(profiles: &ProfileSet) -> Dataset {
    let mut rows = Vec::new();
    for p in profiles.iter() {
        let power = chipset_power(&p.chipset);
        rows.push(vec![json!(p.name), json!("tx"), json!(power.tx * 1e3)]);
        rows.push(vec![json!(p.name), json!("rx"), json!(power.rx * 1e3)]);
    }
    Dataset {
        columns: vec!["protocol", "direction", "power_mw"],
        defaults: vec![],
        rows,
    }
}

/// Chipset energy per megabit per protocol and direction.
pub fn fig9_normalized_energy(profiles: &ProfileSet) -> Dataset {
    let mut rows = Vec::new();
    for p in profiles.iter() {
        let e = normalized_energy(&p.chipset).expect("positive chip rate");
        rows.push(vec![json!(p.name), json!("tx"), json!(e.tx_mj_per_mb)]);
        rows.push(vec![json!(p.name), json!("rx"), json!(e.rx_mj_per_mb)]);
    }
    Dataset {
        columns: vec!["protocol", "direction", "mj_per_mb"],
        defaults: vec![],
        rows,
    }
}

/// Analytic BER waterfall curves for every modeled scheme over [0, 25] dB.
pub fn fig10_ber_curves() -> Dataset {
    let mut rows = Vec::new();
    for scheme in ModulationScheme::all() {
        for point in ber_curve(&scheme, 0.0, 25.0, 0.25).expect("valid sweep") {
            rows.push(vec![
                json!(scheme.to_string()),
                json!(point.ebn0_db),
                json!(point.ber),
            ]);
        }
    }
    Dataset {
        columns: vec!["scheme", "ebn0_db", "ber"],
        defaults: vec![],
        rows,
    }
}

/// Coding efficiency vs data size per protocol, whole-packet mode.
/// Sizes include each protocol's exact payload multiples so the
/// sawtooth peaks are sampled.
pub fn fig11_coding_efficiency(profiles: &ProfileSet) -> Dataset {
    let mut rows = Vec::new();
    for p in profiles.iter() {
        let mut sizes = log_spaced_sizes(1, 10_000, 30);
        for k in 1..=10u64 {
            sizes.push(k * p.max_payload);
        }
        sizes.sort_unstable();
        sizes.dedup();
        for size in sizes {
            let eff =
                coding_efficiency(size, p, PacketizationMode::Ceil).expect("size >= 1");
            rows.push(vec![json!(p.name), json!(size), json!(eff)]);
        }
    }
    Dataset {
        columns: vec!["protocol", "data_size_bytes", "efficiency_pct"],
        defaults: vec![("packetization", "ceil".to_string())],
        rows,
    }
}
