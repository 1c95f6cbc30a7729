//! Command-line surface: profile inspection, one-shot model evaluation,
//! figure-dataset generation, reference-table regressions, and advisor
//! queries.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 usage error,
//! 2 unknown entity, 3 I/O error, 4 domain/model error, 5 empty feasible
//! set.

pub mod figures;
pub mod regress;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use linkgauge::advisor::{
    builtin_presets, rank, ApplicationCategory, ApplicationRequirements, ScoreWeights, Topology,
};
use linkgauge::ber::{ber_analytic, ber_monte_carlo, ebn0_for_target, BerError, ModulationScheme};
use linkgauge::energymodels::{radio_tx_energy, EnergyModelParams};
use linkgauge::linkmodels::{
    coding_efficiency, friis_range, friis_received_power, transmission_time,
    two_ray_received_power, wavelength, LinkBudgetParams, PacketizationMode, PropagationParams,
};
use linkgauge::registry::{load_builtin_profiles, merge_profile_file, LoadError, ProfileSet};

#[derive(Parser)]
#[command(
    name = "linkgauge",
    version,
    about = "Wireless link performance models: timing, propagation, energy, BER, protocol advice"
)]
struct Cli {
    /// Merge user protocol profiles from a JSON file.
    #[arg(long, global = true, env = "LINKGAUGE_PROFILES", value_name = "FILE")]
    profiles: Option<PathBuf>,

    /// Output format for datasets and advisor results.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect built-in and user-loaded protocol profiles.
    Profiles {
        #[command(subcommand)]
        action: ProfilesAction,
    },
    /// Write a figure dataset (deterministic, analytic only).
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        /// Output file path.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Evaluate one model and print a single result line.
    Eval {
        #[command(subcommand)]
        model: EvalModel,
    },
    /// Compare computed values against the reference tables.
    Regress {
        #[arg(value_enum)]
        table: RegressTable,
    },
    /// Rank protocols against application requirements.
    Advise(AdviseArgs),
}

#[derive(Subcommand)]
enum ProfilesAction {
    /// List all profile names.
    List,
    /// Dump every field of one profile.
    Show { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureId {
    /// Transmission time vs data size.
    Fig4,
    /// Free-space range vs carrier frequency.
    Fig5,
    /// Radio transmit energy vs distance.
    Fig6,
    /// Two-ray received power vs distance.
    Fig7,
    /// Chipset power draw.
    Fig8,
    /// Chipset energy per megabit.
    Fig9,
    /// BER waterfall curves.
    Fig10,
    /// Coding efficiency vs data size.
    Fig11,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegressTable {
    Table3,
    Table7,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Ceil,
    Fractional,
}

impl From<ModeArg> for PacketizationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Ceil => PacketizationMode::Ceil,
            ModeArg::Fractional => PacketizationMode::Fractional,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropagationModel {
    Friis,
    TwoRay,
}

#[derive(Subcommand)]
enum EvalModel {
    /// Transmission time for a data block, in microseconds.
    Txtime {
        #[arg(long)]
        protocol: String,
        /// Data size in bytes (suffixes k/M/G accepted).
        #[arg(long, value_parser = parse_si_u64)]
        data: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Ceil)]
        mode: ModeArg,
        /// Propagation delay in seconds.
        #[arg(long, default_value_t = 0.0, value_parser = parse_si)]
        t_prop: f64,
    },
    /// Coding efficiency for a data block, in percent.
    Efficiency {
        #[arg(long)]
        protocol: String,
        #[arg(long, value_parser = parse_si_u64)]
        data: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Ceil)]
        mode: ModeArg,
    },
    /// Free-space range for a target received power, in meters.
    Range {
        /// Transmitted power in watts.
        #[arg(long, value_parser = parse_si)]
        tx_power: f64,
        /// Receiver sensitivity in watts.
        #[arg(long, value_parser = parse_si)]
        rx_power: f64,
        /// Carrier frequency in hertz (suffixes k/M/G accepted).
        #[arg(long, value_parser = parse_si)]
        frequency: f64,
        #[arg(long, default_value_t = 1.0, value_parser = parse_si)]
        gain_tx: f64,
        #[arg(long, default_value_t = 1.0, value_parser = parse_si)]
        gain_rx: f64,
    },
    /// Received power at a distance, in watts.
    Rxpower {
        #[arg(long, value_parser = parse_si)]
        tx_power: f64,
        #[arg(long, value_parser = parse_si)]
        frequency: f64,
        #[arg(long, value_parser = parse_meters)]
        distance: f64,
        #[arg(long, value_enum, default_value_t = PropagationModel::Friis)]
        model: PropagationModel,
        #[arg(long, default_value_t = 1.0, value_parser = parse_si)]
        gain_tx: f64,
        #[arg(long, default_value_t = 1.0, value_parser = parse_si)]
        gain_rx: f64,
        /// System path loss factor (two-ray only).
        #[arg(long, default_value_t = 1.0, value_parser = parse_si)]
        path_loss: f64,
        /// Antenna heights in meters (two-ray only).
        #[arg(long, default_value_t = 1.5, value_parser = parse_si)]
        h_tx: f64,
        #[arg(long, default_value_t = 1.5, value_parser = parse_si)]
        h_rx: f64,
    },
    /// First-order radio transmit energy, in joules.
    Energy {
        /// Message size in bits (suffixes k/M/G accepted).
        #[arg(long, value_parser = parse_si)]
        bits: f64,
        #[arg(long, value_parser = parse_meters)]
        distance: f64,
    },
    /// Bit error rate over AWGN.
    Ber {
        /// Modulation scheme (bpsk, gmsk, fsk, gfsk, 8psk, 8dpsk, 4pam,
        /// 16qam, ofdm or ofdm(<scheme>)).
        #[arg(long)]
        scheme: String,
        /// Eb/N0 in dB.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_si)]
        ebn0: f64,
        /// Simulate instead of evaluating the closed form.
        #[arg(long)]
        monte_carlo: bool,
        /// Simulated bits (Monte Carlo only; suffixes accepted).
        #[arg(long, default_value = "1M", value_parser = parse_si_u64)]
        bits: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Eb/N0 in dB at which a scheme reaches a target BER.
    Threshold {
        #[arg(long)]
        scheme: String,
        #[arg(long, value_parser = parse_si)]
        target: f64,
    },
}

#[derive(Args)]
struct AdviseArgs {
    /// Named requirement preset (see `advise --preset help`).
    #[arg(long)]
    preset: Option<String>,
    /// Required data rate in bits/second (suffixes k/M/G accepted).
    #[arg(long, value_parser = parse_si)]
    rate: Option<f64>,
    /// Required range in meters.
    #[arg(long, value_parser = parse_meters)]
    range: Option<f64>,
    /// Number of nodes in the cell.
    #[arg(long)]
    nodes: Option<u64>,
    /// Typical message size in bytes.
    #[arg(long, value_parser = parse_si_u64)]
    message_size: Option<u64>,
    /// Nodes run on batteries (doubles the energy weight).
    #[arg(long)]
    battery: bool,
    /// Scoring weights as `energy,efficiency,txtime`.
    #[arg(long, value_parser = parse_weights)]
    weights: Option<ScoreWeights>,
}

/// A `main`-ready error: message plus process exit code.
struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 1 }
    }
    fn unknown(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }
    fn io(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 3 }
    }
    fn domain(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 4 }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } => CliError::io(e.to_string()),
            LoadError::Parse { .. } | LoadError::Validation { .. } => {
                CliError::domain(e.to_string())
            }
        }
    }
}

impl From<BerError> for CliError {
    fn from(e: BerError) -> Self {
        CliError::domain(e.to_string())
    }
}

impl From<linkgauge::DomainError> for CliError {
    fn from(e: linkgauge::DomainError) -> Self {
        CliError::domain(e.to_string())
    }
}

/// Parses a float with an optional k/M/G suffix ("30M" -> 3e7).
fn parse_si(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (body, factor) = match s.strip_suffix(['k', 'K']) {
        Some(b) => (b, 1e3),
        None => match s.strip_suffix('M') {
            Some(b) => (b, 1e6),
            None => match s.strip_suffix('G') {
                Some(b) => (b, 1e9),
                None => (s, 1.0),
            },
        },
    };
    body.trim()
        .parse::<f64>()
        .map(|v| v * factor)
        .map_err(|e| format!("invalid number \"{s}\": {e}"))
}

/// Like [`parse_si`], but tolerates an explicit trailing `m` unit
/// ("50m", "20km").
fn parse_meters(s: &str) -> Result<f64, String> {
    parse_si(s.trim().strip_suffix('m').unwrap_or(s.trim()))
}

fn parse_si_u64(s: &str) -> Result<u64, String> {
    let v = parse_si(s)?;
    if v < 0.0 || v.fract().abs() > 1e-9 * v.abs().max(1.0) {
        return Err(format!("expected a non-negative integer, got \"{s}\""));
    }
    Ok(v.round() as u64)
}

fn parse_weights(s: &str) -> Result<ScoreWeights, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated weights: energy,efficiency,txtime".into());
    }
    let w = ScoreWeights {
        w_energy: parse_si(parts[0])?,
        w_efficiency: parse_si(parts[1])?,
        w_txtime: parse_si(parts[2])?,
    };
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}

/// Parses the process arguments, runs the command and returns the exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let mut profiles = load_builtin_profiles();
    if let Some(path) = &cli.profiles {
        if let Err(e) = merge_profile_file(&mut profiles, path) {
            let e = CliError::from(e);
            eprintln!("error: {}", e.message);
            return e.code;
        }
    }

    match dispatch(&cli, &profiles) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: &Cli, profiles: &ProfileSet) -> Result<(), CliError> {
    match &cli.command {
        Command::Profiles { action } => cmd_profiles(action, profiles),
        Command::Figure { id, out } => cmd_figure(*id, cli.format, out, profiles),
        Command::Eval { model } => cmd_eval(model, profiles),
        Command::Regress { table } => cmd_regress(*table, profiles),
        Command::Advise(args) => cmd_advise(args, cli.format, profiles),
    }
}

fn lookup<'a>(
    profiles: &'a ProfileSet,
    name: &str,
) -> Result<&'a linkgauge::registry::ProtocolProfile, CliError> {
    profiles.get(name).ok_or_else(|| {
        CliError::unknown(format!(
            "unknown profile \"{name}\"; available: {}",
            profiles.names().collect::<Vec<_>>().join(", ")
        ))
    })
}

fn parse_scheme(s: &str) -> Result<ModulationScheme, CliError> {
    s.parse::<ModulationScheme>().map_err(CliError::unknown)
}

fn cmd_profiles(action: &ProfilesAction, profiles: &ProfileSet) -> Result<(), CliError> {
    match action {
        ProfilesAction::List => {
            for name in profiles.names() {
                println!("{name}");
            }
        }
        ProfilesAction::Show { name } => {
            let p = lookup(profiles, name)?;
            let mut out = String::new();
            let _ = writeln!(out, "name: {}", p.name);
            let _ = writeln!(out, "max_data_rate: {} bits/s", p.max_data_rate);
            let _ = writeln!(out, "bit_time: {} s", p.bit_time);
            let _ = writeln!(out, "max_payload: {} bytes", p.max_payload);
            let _ = writeln!(out, "overhead_bits: {} bits", p.overhead_bits);
            let _ = writeln!(out, "carrier_frequency: {} Hz", p.carrier_frequency);
            let _ = writeln!(out, "nominal_tx_power: {} W", p.nominal_tx_power);
            let _ = writeln!(
                out,
                "nominal_range: {} - {} m",
                p.nominal_range.min(),
                p.nominal_range.max()
            );
            let _ = writeln!(out, "max_cell_nodes: {}", p.max_cell_nodes);
            let mods: Vec<String> = p.modulations.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "modulations: {}", mods.join(", "));
            let _ = writeln!(out, "chipset: {}", p.chipset.chip_name);
            let _ = writeln!(out, "  vdd: {} V", p.chipset.vdd);
            let _ = writeln!(out, "  i_tx: {} A", p.chipset.i_tx);
            let _ = writeln!(out, "  i_rx: {} A", p.chipset.i_rx);
            let _ = writeln!(out, "  chip_bit_rate: {} bits/s", p.chipset.chip_bit_rate);
            for (key, value) in &p.metadata {
                let _ = writeln!(out, "{key}: {value}");
            }
            print!("{out}");
        }
    }
    Ok(())
}

fn cmd_figure(
    id: FigureId,
    format: OutputFormat,
    out: &PathBuf,
    profiles: &ProfileSet,
) -> Result<(), CliError> {
    let dataset = match id {
        FigureId::Fig4 => figures::fig4_txtime(profiles),
        FigureId::Fig5 => figures::fig5_range_vs_freq(),
        FigureId::Fig6 => figures::fig6_energy_vs_range(),
        FigureId::Fig7 => figures::fig7_rxpower(profiles),
        FigureId::Fig8 => figures::fig8_chipset_power(profiles),
        FigureId::Fig9 => figures::fig9_normalized_energy(profiles),
        FigureId::Fig10 => figures::fig10_ber_curves(),
        FigureId::Fig11 => figures::fig11_coding_efficiency(profiles),
    };
    let text = match format {
        OutputFormat::Csv => dataset.to_csv(),
        OutputFormat::Json => dataset.to_json(),
    };
    std::fs::write(out, text)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_eval(model: &EvalModel, profiles: &ProfileSet) -> Result<(), CliError> {
    match model {
        EvalModel::Txtime { protocol, data, mode, t_prop } => {
            let p = lookup(profiles, protocol)?;
            let t = transmission_time(*data, p, (*mode).into(), *t_prop)?;
            println!("{} us", format_sig(t * 1e6));
        }
        EvalModel::Efficiency { protocol, data, mode } => {
            let p = lookup(profiles, protocol)?;
            let eff = coding_efficiency(*data, p, (*mode).into())?;
            println!("{eff:.2} %");
        }
        EvalModel::Range { tx_power, rx_power, frequency, gain_tx, gain_rx } => {
            let params = LinkBudgetParams {
                tx_power: *tx_power,
                rx_power: *rx_power,
                gain_tx: *gain_tx,
                gain_rx: *gain_rx,
                wavelength: wavelength(*frequency),
            };
            let d = friis_range(&params)?;
            println!("{} m", format_sig(d));
        }
        EvalModel::Rxpower {
            tx_power,
            frequency,
            distance,
            model,
            gain_tx,
            gain_rx,
            path_loss,
            h_tx,
            h_rx,
        } => {
            let pr = match model {
                PropagationModel::Friis => {
                    let params = LinkBudgetParams {
                        tx_power: *tx_power,
                        rx_power: 1.0,
                        gain_tx: *gain_tx,
                        gain_rx: *gain_rx,
                        wavelength: wavelength(*frequency),
                    };
                    friis_received_power(&params, *distance)?
                }
                PropagationModel::TwoRay => {
                    let params = PropagationParams {
                        tx_power: *tx_power,
                        gain_tx: *gain_tx,
                        gain_rx: *gain_rx,
                        wavelength: wavelength(*frequency),
                        path_loss: *path_loss,
                        h_tx: *h_tx,
                        h_rx: *h_rx,
                    };
                    two_ray_received_power(&params, *distance)?
                }
            };
            println!("{pr:.6e} W");
        }
        EvalModel::Energy { bits, distance } => {
            let e = radio_tx_energy(*bits, *distance, &EnergyModelParams::default())?;
            println!("{e:.6e} J");
        }
        EvalModel::Ber { scheme, ebn0, monte_carlo, bits, seed } => {
            let scheme = parse_scheme(scheme)?;
            if *monte_carlo {
                let result = ber_monte_carlo(&scheme, *ebn0, *bits, *seed)?;
                println!(
                    "{:.6e} ({} errors / {} bits, ci95 ±{:.2e})",
                    result.ber_hat, result.n_err, result.n_tx_bits, result.ci95_halfwidth
                );
            } else {
                println!("{:.6e}", ber_analytic(&scheme, *ebn0));
            }
        }
        EvalModel::Threshold { scheme, target } => {
            let scheme = parse_scheme(scheme)?;
            let db = ebn0_for_target(&scheme, *target)?;
            println!("{db:.2} dB");
        }
    }
    Ok(())
}

fn format_sig(v: f64) -> String {
    // trim trailing zeros of a fixed 4-decimal rendering
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn cmd_regress(table: RegressTable, profiles: &ProfileSet) -> Result<(), CliError> {
    let rows = match table {
        RegressTable::Table3 => regress::table3(profiles),
        RegressTable::Table7 => regress::table7(),
    };
    let unit = match table {
        RegressTable::Table3 => "%",
        RegressTable::Table7 => "dB",
    };
    println!(
        "{:<24} {:>10} {:>10} {:>8}  status",
        "row",
        format!("ref [{unit}]"),
        format!("got [{unit}]"),
        "delta"
    );
    for row in &rows {
        println!(
            "{:<24} {:>10.2} {:>10.2} {:>+8.2}  {}",
            row.label,
            row.reference,
            row.computed,
            row.delta,
            row.status.label()
        );
    }
    if regress::all_ok(&rows) {
        Ok(())
    } else {
        Err(CliError::domain("one or more regression rows failed"))
    }
}

fn cmd_advise(
    args: &AdviseArgs,
    format: OutputFormat,
    profiles: &ProfileSet,
) -> Result<(), CliError> {
    let presets = builtin_presets();
    let (mut reqs, mut weights) = match &args.preset {
        Some(name) => {
            let preset = presets.get(name).ok_or_else(|| {
                CliError::unknown(format!(
                    "unknown preset \"{name}\"; available: {}",
                    presets.keys().cloned().collect::<Vec<_>>().join(", ")
                ))
            })?;
            (preset.requirements.clone(), preset.weights)
        }
        None => {
            let rate = args.rate.ok_or_else(|| {
                CliError::usage("either --preset or --rate/--range must be given")
            })?;
            let range = args.range.ok_or_else(|| {
                CliError::usage("either --preset or --rate/--range must be given")
            })?;
            (
                ApplicationRequirements {
                    category: ApplicationCategory::Custom,
                    required_rate: rate,
                    required_range: range,
                    node_count: args.nodes.unwrap_or(1),
                    message_size: args.message_size.unwrap_or(100),
                    battery_constrained: args.battery,
                    needs_permanent_connection: false,
                    topology: Topology::Direct,
                },
                ScoreWeights::default(),
            )
        }
    };
    // inline flags override preset fields
    if args.preset.is_some() {
        if let Some(rate) = args.rate {
            reqs.required_rate = rate;
        }
        if let Some(range) = args.range {
            reqs.required_range = range;
        }
        if let Some(nodes) = args.nodes {
            reqs.node_count = nodes;
        }
        if let Some(size) = args.message_size {
            reqs.message_size = size;
        }
        if args.battery {
            reqs.battery_constrained = true;
        }
    }
    if let Some(w) = args.weights {
        weights = w;
    }
    reqs.validate().map_err(|e| CliError::usage(e.to_string()))?;

    let recs = rank(&reqs, profiles, &weights).map_err(|e| CliError {
        message: e.to_string(),
        code: 5,
    })?;

    match format {
        OutputFormat::Json => {
            let doc = json!({
                "requirements": reqs,
                "weights": weights,
                "recommendations": recs,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        OutputFormat::Csv => {
            println!("profile,feasible,score,energy,efficiency,txtime,rationale");
            for r in &recs {
                let metric = |key: &str| {
                    r.per_metric
                        .get(key)
                        .map(|v| format!("{v:.4}"))
                        .unwrap_or_default()
                };
                println!(
                    "{},{},{:.4},{},{},{},\"{}\"",
                    r.profile_name,
                    r.feasible,
                    r.score,
                    metric("energy"),
                    metric("efficiency"),
                    metric("txtime"),
                    r.rationale
                );
            }
        }
    }
    Ok(())
}
