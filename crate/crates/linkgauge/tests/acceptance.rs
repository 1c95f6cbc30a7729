//! Acceptance gate: one test per release criterion, each printing a
//! single PASS/FAIL line. Tolerances are pinned here, not in helper
//! code, so a red line always points at a real regression.
//!
//! Two criteria are knowingly red; the deviations are intrinsic to the
//! exact closed forms this toolkit adopts and are documented in the
//! README ("Known deviations"):
//! - criterion 2: the GFSK reference threshold (15.7 dB) is 1.51 dB
//!   above the noncoherent-BFSK model's exact crossing (14.19 dB),
//!   outside the ±1.0 dB row tolerance;
//! - criterion 5: 8-PSK dips below coherent/noncoherent binary FSK at
//!   low Eb/N0, so "8-ary above binary pointwise" cannot hold for the
//!   orthogonal binary schemes.

use std::process::Command;
use std::time::Instant;

use linkgauge::advisor::{
    builtin_presets, filter_feasible, rank, ApplicationCategory, ApplicationRequirements,
    ScoreWeights, Topology,
};
use linkgauge::ber::{ber_analytic, ber_monte_carlo, ebn0_for_target, ModulationScheme};
use linkgauge::energymodels::{crossover_distance, EnergyModelParams};
use linkgauge::linkmodels::{
    coding_efficiency, friis_received_power, two_ray_crossover, two_ray_received_power,
    wavelength, LinkBudgetParams, PacketizationMode, PropagationParams,
};
use linkgauge::registry::load_builtin_profiles;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("ACCEPTANCE {n} ({name}): PASS");
    } else {
        println!("ACCEPTANCE {n} ({name}): FAIL");
        panic!("criterion {n} ({name}) failed:\n  {}", failures.join("\n  "));
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linkgauge"))
}

/// Rows of a CSV produced by the binary ('#' comments skipped).
fn run_figure_csv(id: &str, dir: &std::path::Path) -> Vec<Vec<String>> {
    let path = dir.join(format!("{id}.csv"));
    let status = bin()
        .args(["figure", id, "--out"])
        .arg(&path)
        .status()
        .expect("binary runs");
    assert!(status.success(), "figure {id} failed");
    let text = std::fs::read_to_string(&path).expect("dataset readable");
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn criterion_1_coding_efficiency_regression() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let profiles = load_builtin_profiles();
    let rows = [
        ("bluetooth", PacketizationMode::Ceil, 94.41),
        ("uwb", PacketizationMode::Ceil, 97.94),
        ("zigbee", PacketizationMode::Ceil, 76.52),
        ("wifi", PacketizationMode::Ceil, 97.18),
        ("wimax", PacketizationMode::Fractional, 98.54),
    ];
    for (name, mode, expected) in rows {
        let got = coding_efficiency(10_000, profiles.get(name).unwrap(), mode).unwrap();
        if (got - expected).abs() > 0.01 {
            failures.push(format!("{name}: {got:.4} % vs {expected} % (tol 0.01 pp)"));
        }
    }
    // gprs must be reported as a documented failure, never a silent pass
    let gprs = coding_efficiency(10_000, profiles.get("gprs").unwrap(), PacketizationMode::Ceil)
        .unwrap();
    if (gprs - 80.86).abs() <= 0.01 {
        failures.push(format!(
            "gprs unexpectedly reproduces 80.86 % (got {gprs:.4} %); EXPECTED-FAIL row is stale"
        ));
    }
    let output = bin().args(["regress", "table3"]).output().expect("binary runs");
    let stdout = String::from_utf8_lossy(&output.stdout);
    if !output.status.success() {
        failures.push("regress table3 exited nonzero".to_string());
    }
    if !stdout.lines().any(|l| l.contains("gprs") && l.contains("EXPECTED-FAIL")) {
        failures.push("regress table3 does not flag gprs as EXPECTED-FAIL".to_string());
    }
    if start.elapsed().as_secs_f64() >= 1.0 {
        failures.push(format!("runtime {:?} >= 1 s", start.elapsed()));
    }
    verdict(1, "coding-efficiency regression", failures);
}

#[test]
fn criterion_2_threshold_regression() {
    use ModulationScheme::*;
    let start = Instant::now();
    let mut failures = Vec::new();
    let anchors = [
        (Gmsk, 12.7),
        (CoherentBfsk, 13.3),
        (Psk8, 13.8),
        (Ofdm(Box::new(Qam16)), 14.3),
        (Qam16, 14.8),
        (Gfsk, 15.7),
    ];
    for (scheme, reference) in anchors {
        let got = ebn0_for_target(&scheme, 1e-6).unwrap();
        if (got - reference).abs() > 1.0 {
            failures.push(format!(
                "{scheme}: {got:.2} dB vs reference {reference} dB (tol 1.0 dB)"
            ));
        }
    }
    let deviations = [
        (BpskFamily, 7.8, 2.7),
        (Pam4, 17.6, -3.2),
        (Dpsk8, 22.6, -5.8),
    ];
    for (scheme, reference, documented_delta) in deviations {
        let got = ebn0_for_target(&scheme, 1e-6).unwrap();
        let delta = got - reference;
        println!("  {scheme}: computed {got:.2} dB, reference {reference} dB, delta {delta:+.2} dB");
        if (delta - documented_delta).abs() > 0.3 {
            failures.push(format!(
                "{scheme}: delta {delta:+.2} dB vs documented {documented_delta:+.1} dB (tol 0.3 dB)"
            ));
        }
    }
    if start.elapsed().as_secs_f64() >= 1.0 {
        failures.push(format!("runtime {:?} >= 1 s", start.elapsed()));
    }
    verdict(2, "Eb/N0 threshold regression", failures);
}

#[test]
fn criterion_3_monte_carlo_vs_analytic() {
    use ModulationScheme::*;
    let start = Instant::now();
    let mut failures = Vec::new();
    const N_BITS: u64 = 10_000_000;
    const SEED: u64 = 0x1F2E3D4C;
    let schemes = [
        BpskFamily,
        CoherentBfsk,
        Gfsk,
        Psk8,
        Dpsk8,
        Pam4,
        Qam16,
        Ofdm(Box::new(Qam16)),
    ];
    for scheme in &schemes {
        for ebn0 in [2.0, 6.0, 10.0] {
            let p = ber_analytic(scheme, ebn0);
            let result = ber_monte_carlo(scheme, ebn0, N_BITS, SEED).unwrap();
            let sigma = (p * (1.0 - p) / result.n_tx_bits as f64).sqrt();
            let z = (result.ber_hat - p) / sigma;
            if z.abs() > 4.0 {
                failures.push(format!(
                    "{scheme} at {ebn0} dB: ber_hat {:.6e} vs analytic {p:.6e}, z = {z:.2}",
                    result.ber_hat
                ));
            }
        }
    }
    // determinism across repeated runs
    let a = ber_monte_carlo(&Qam16, 6.0, N_BITS, SEED).unwrap();
    let b = ber_monte_carlo(&Qam16, 6.0, N_BITS, SEED).unwrap();
    if a != b {
        failures.push("repeated run differs".to_string());
    }
    // determinism across worker counts
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| ber_monte_carlo(&Psk8, 6.0, N_BITS, SEED).unwrap());
    let four = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| ber_monte_carlo(&Psk8, 6.0, N_BITS, SEED).unwrap());
    if one != four {
        failures.push("result depends on worker count".to_string());
    }
    if start.elapsed().as_secs_f64() >= 120.0 {
        failures.push(format!("runtime {:?} >= 2 min", start.elapsed()));
    }
    verdict(3, "Monte Carlo vs analytic oracle", failures);
}

#[test]
fn criterion_4_branch_continuity() {
    let mut failures = Vec::new();

    // first-order radio model: amplifier branches at d0
    let params = EnergyModelParams::default();
    let d0 = crossover_distance(&params);
    if (d0 - 87.71).abs() > 0.01 {
        failures.push(format!("d0 = {d0:.4} m, expected 87.71 m"));
    }
    let near = params.eps_fs * d0 * d0;
    let far = params.eps_amp * d0 * d0 * d0 * d0;
    let rel = ((near - far) / far).abs();
    if rel > 1e-15 {
        failures.push(format!("energy branches differ by {rel:.2e} at d0 (tol 1e-15)"));
    }

    // two-ray vs free-space at the crossover distance, 2.4 GHz geometry
    let prop = PropagationParams {
        tx_power: 1.0,
        gain_tx: 1.0,
        gain_rx: 1.0,
        wavelength: wavelength(2.4e9),
        path_loss: 1.0,
        h_tx: 1.5,
        h_rx: 1.5,
    };
    let dc = two_ray_crossover(&prop).unwrap();
    if (dc - 226.4).abs() > 0.1 {
        failures.push(format!("d_c = {dc:.4} m, expected 226.4 m"));
    }
    let friis = friis_received_power(
        &LinkBudgetParams {
            tx_power: prop.tx_power,
            rx_power: 1.0,
            gain_tx: prop.gain_tx,
            gain_rx: prop.gain_rx,
            wavelength: prop.wavelength,
        },
        dc,
    )
    .unwrap();
    let two_ray = two_ray_received_power(&prop, dc).unwrap();
    let rel = ((friis - two_ray) / friis).abs();
    if rel > 1e-12 {
        failures.push(format!("propagation branches differ by {rel:.2e} at d_c (tol 1e-12)"));
    }
    verdict(4, "branch continuity", failures);
}

#[test]
fn criterion_5_figure_dataset_properties() {
    let mut failures = Vec::new();
    let dir = tempfile::tempdir().unwrap();

    // fig4: gprs slowest and uwb fastest at every size
    {
        let rows = run_figure_csv("fig4", dir.path());
        let mut by_size: std::collections::BTreeMap<u64, Vec<(String, f64)>> = Default::default();
        for row in &rows {
            by_size
                .entry(row[0].parse().unwrap())
                .or_default()
                .push((row[1].clone(), row[2].parse().unwrap()));
        }
        for (size, entries) in &by_size {
            let t = |name: &str| entries.iter().find(|(n, _)| n == name).unwrap().1;
            for (name, txtime) in entries {
                if name != "gprs" && *txtime >= t("gprs") {
                    failures.push(format!("fig4: {name} >= gprs at {size} B"));
                }
                if name != "uwb" && *txtime <= t("uwb") {
                    failures.push(format!("fig4: {name} <= uwb at {size} B"));
                }
            }
        }
    }

    // fig5: range inversely proportional to frequency
    {
        let rows = run_figure_csv("fig5", dir.path());
        let products: Vec<f64> = rows
            .iter()
            .map(|r| r[0].parse::<f64>().unwrap() * r[1].parse::<f64>().unwrap())
            .collect();
        for p in &products {
            if ((p - products[0]) / products[0]).abs() > 1e-9 {
                failures.push("fig5: range * frequency is not constant".to_string());
                break;
            }
        }
    }

    // fig7: strictly decreasing per protocol; gprs above zigbee everywhere
    {
        let rows = run_figure_csv("fig7", dir.path());
        let mut per_proto: std::collections::BTreeMap<String, Vec<(f64, f64)>> = Default::default();
        for row in &rows {
            per_proto
                .entry(row[0].clone())
                .or_default()
                .push((row[1].parse().unwrap(), row[2].parse().unwrap()));
        }
        for (name, curve) in &per_proto {
            for pair in curve.windows(2) {
                if pair[1].1 >= pair[0].1 {
                    failures.push(format!("fig7: {name} not strictly decreasing"));
                    break;
                }
            }
        }
        for (g, z) in per_proto["gprs"].iter().zip(&per_proto["zigbee"]) {
            if g.1 <= z.1 {
                failures.push(format!("fig7: gprs <= zigbee at {} m", g.0));
                break;
            }
        }
    }

    // fig9: high-rate protocols beat low-rate protocols on energy per bit
    {
        let rows = run_figure_csv("fig9", dir.path());
        let value = |proto: &str, dir_: &str| {
            rows.iter()
                .find(|r| r[0] == proto && r[1] == dir_)
                .unwrap()[2]
                .parse::<f64>()
                .unwrap()
        };
        for dir_ in ["tx", "rx"] {
            for fast in ["uwb", "wifi", "wimax"] {
                for slow in ["bluetooth", "zigbee", "gprs"] {
                    if value(fast, dir_) >= value(slow, dir_) {
                        failures.push(format!("fig9: {fast} {dir_} >= {slow} {dir_}"));
                    }
                }
            }
        }
    }

    // fig10: waterfall shape; 8-ary above binary pointwise
    {
        let rows = run_figure_csv("fig10", dir.path());
        let mut per_scheme: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
        for row in &rows {
            per_scheme
                .entry(row[0].clone())
                .or_default()
                .push(row[2].parse().unwrap());
        }
        for (name, curve) in &per_scheme {
            for pair in curve.windows(2) {
                if pair[1] >= pair[0] {
                    failures.push(format!("fig10: {name} not strictly decreasing"));
                    break;
                }
            }
        }
        for eight in ["8psk", "8dpsk"] {
            for binary in ["bpsk", "gmsk", "fsk", "gfsk"] {
                let crossings = per_scheme[eight]
                    .iter()
                    .zip(&per_scheme[binary])
                    .filter(|(e, b)| e <= b)
                    .count();
                if crossings > 0 {
                    failures.push(format!(
                        "fig10: {eight} not above {binary} at {crossings} of {} grid points",
                        per_scheme[eight].len()
                    ));
                }
            }
        }
    }

    // fig11: efficiency non-decreasing at payload multiples
    {
        let rows = run_figure_csv("fig11", dir.path());
        let profiles = load_builtin_profiles();
        for p in profiles.iter() {
            let at_multiples: Vec<f64> = rows
                .iter()
                .filter(|r| {
                    r[0] == p.name && r[1].parse::<u64>().unwrap() % p.max_payload == 0
                })
                .map(|r| r[2].parse().unwrap())
                .collect();
            for pair in at_multiples.windows(2) {
                if pair[1] < pair[0] - 1e-12 {
                    failures.push(format!("fig11: {} decreasing at payload multiple", p.name));
                    break;
                }
            }
        }
    }

    verdict(5, "figure dataset properties", failures);
}

#[test]
fn criterion_6_chipset_reference_values() {
    let mut failures = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let fig8 = run_figure_csv("fig8", dir.path());
    let fig9 = run_figure_csv("fig9", dir.path());
    let lookup = |rows: &[Vec<String>], proto: &str, dir_: &str| {
        rows.iter()
            .find(|r| r[0] == proto && r[1] == dir_)
            .unwrap()[2]
            .parse::<f64>()
            .unwrap()
    };
    // 4 significant figures
    let cases = [
        ("fig8 bluetooth tx [mW]", lookup(&fig8, "bluetooth", "tx"), 102.6),
        ("fig9 zigbee tx [mJ/Mb]", lookup(&fig9, "zigbee", "tx"), 296.4),
        ("fig9 uwb tx [mJ/Mb]", lookup(&fig9, "uwb", "tx"), 6.570),
    ];
    for (label, got, expected) in cases {
        if ((got - expected) / expected).abs() > 5e-4 {
            failures.push(format!("{label}: {got:.6} vs {expected}"));
        }
    }
    verdict(6, "chipset reference values", failures);
}

#[test]
fn criterion_7_advisor() {
    let mut failures = Vec::new();
    let profiles = load_builtin_profiles();

    let video = &builtin_presets()["video-monitoring"];
    let (feasible, _) = filter_feasible(&video.requirements, &profiles);
    let names: Vec<&str> = feasible.iter().map(|p| p.name.as_str()).collect();
    if names != ["uwb", "wifi", "wimax"] {
        failures.push(format!("video preset feasible set {names:?}"));
    }

    let long_range = ApplicationRequirements {
        category: ApplicationCategory::Custom,
        required_rate: 50e3,
        required_range: 20e3,
        node_count: 100,
        message_size: 100,
        battery_constrained: false,
        needs_permanent_connection: false,
        topology: Topology::Direct,
    };
    let (feasible, _) = filter_feasible(&long_range, &profiles);
    let names: Vec<&str> = feasible.iter().map(|p| p.name.as_str()).collect();
    if names != ["gprs", "wimax"] {
        failures.push(format!("20 km query feasible set {names:?}"));
    }

    // weight scaling never changes the ordering
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let reqs = ApplicationRequirements {
            category: ApplicationCategory::Custom,
            required_rate: 10f64.powf(rng.gen_range(0.0..8.0)),
            required_range: 10f64.powf(rng.gen_range(0.0..4.5)),
            node_count: rng.gen_range(1..=2000),
            message_size: rng.gen_range(1..=5000),
            battery_constrained: rng.gen_bool(0.5),
            needs_permanent_connection: rng.gen_bool(0.5),
            topology: Topology::Direct,
        };
        let weights = ScoreWeights {
            w_energy: rng.gen_range(0.01..=1.0),
            w_efficiency: rng.gen_range(0.01..=1.0),
            w_txtime: rng.gen_range(0.01..=1.0),
        };
        let scale = 10f64.powf(rng.gen_range(-3.0..3.0));
        let scaled = ScoreWeights {
            w_energy: weights.w_energy * scale,
            w_efficiency: weights.w_efficiency * scale,
            w_txtime: weights.w_txtime * scale,
        };
        let base = match rank(&reqs, &profiles, &weights) {
            Ok(recs) => recs,
            Err(_) => continue, // empty feasible set; draw again
        };
        let other = rank(&reqs, &profiles, &scaled).unwrap();
        let a: Vec<&str> = base.iter().map(|r| r.profile_name.as_str()).collect();
        let b: Vec<&str> = other.iter().map(|r| r.profile_name.as_str()).collect();
        if a != b {
            failures.push(format!("ordering changed under weight scale {scale:.3}: {a:?} vs {b:?}"));
            break;
        }
        checked += 1;
    }

    verdict(7, "advisor feasibility and scale invariance", failures);
}
