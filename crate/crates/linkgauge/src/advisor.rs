//! Protocol-selection advisor: hard feasibility filters over rate,
//! range and network size, then a weighted score over normalized
//! transmit energy, coding efficiency at the application's message
//! size, and transmission time.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::energymodels::normalized_energy;
use crate::error::DomainError;
use crate::linkmodels::{coding_efficiency, transmission_time, PacketizationMode};
use crate::registry::{ProfileSet, ProtocolProfile};

/// Broad application families used to pick requirement presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApplicationCategory {
    EnvironmentalMonitoring,
    EventDetection,
    Tracking,
    Custom,
}

/// Network topology tag. Descriptive only; it does not affect scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    Direct,
    Indirect,
}

/// What the application needs from the link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplicationRequirements {
    pub category: ApplicationCategory,
    /// Required sustained data rate in bits/second.
    pub required_rate: f64,
    /// Required link range in meters.
    pub required_range: f64,
    /// Number of nodes the cell must support.
    pub node_count: u64,
    /// Typical payload per report, in bytes.
    pub message_size: u64,
    /// Whether nodes run on batteries (doubles the energy weight).
    pub battery_constrained: bool,
    pub needs_permanent_connection: bool,
    pub topology: Topology,
}

impl ApplicationRequirements {
    /// Checks the invariants: positive rate and range, at least one
    /// node and a non-empty message.
    pub fn validate(&self) -> Result<(), DomainError> {
        if !(self.required_rate > 0.0) {
            return Err(DomainError::new(format!(
                "required_rate must be > 0, got {}",
                self.required_rate
            )));
        }
        if !(self.required_range > 0.0) {
            return Err(DomainError::new(format!(
                "required_range must be > 0, got {}",
                self.required_range
            )));
        }
        if self.node_count < 1 {
            return Err(DomainError::new("node_count must be >= 1".to_string()));
        }
        if self.message_size < 1 {
            return Err(DomainError::new("message_size must be >= 1".to_string()));
        }
        Ok(())
    }
}

/// Relative importance of the three soft metrics. Each weight must be
/// >= 0 and at least one must be positive; only the ratios matter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreWeights {
    pub w_energy: f64,
    pub w_efficiency: f64,
    pub w_txtime: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights {
            w_energy: 0.5,
            w_efficiency: 0.3,
            w_txtime: 0.2,
        }
    }
}

impl ScoreWeights {
    pub fn validate(&self) -> Result<(), DomainError> {
        let ws = [self.w_energy, self.w_efficiency, self.w_txtime];
        if ws.iter().any(|w| !(*w >= 0.0)) {
            return Err(DomainError::new("weights must be >= 0".to_string()));
        }
        if !(ws.iter().sum::<f64>() > 0.0) {
            return Err(DomainError::new("weight sum must be > 0".to_string()));
        }
        Ok(())
    }
}

/// One ranked (or rejected) profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recommendation {
    pub profile_name: String,
    pub feasible: bool,
    /// Weighted score in [0, 1]; 0 for infeasible profiles.
    pub score: f64,
    /// Normalized per-metric values in [0, 1] (higher is better).
    pub per_metric: BTreeMap<String, f64>,
    pub rationale: String,
}

/// No profile survived the feasibility filters.
#[derive(Debug, Error)]
#[error("no feasible profile: {}", reasons.iter().map(|(n, r)| format!("{n}: {r}")).collect::<Vec<_>>().join("; "))]
pub struct EmptyFeasibleSet {
    /// Failure reason per rejected profile name.
    pub reasons: Vec<(String, String)>,
}

/// Splits `profiles` into the feasible subset and per-profile failure
/// reasons. A profile passes when the required rate, range and node
/// count all fit inside its advertised capabilities. Range is checked
/// against the top of the nominal range interval (optimistic).
pub fn filter_feasible<'a>(
    reqs: &ApplicationRequirements,
    profiles: &'a ProfileSet,
) -> (Vec<&'a ProtocolProfile>, Vec<(String, String)>) {
    let mut feasible = Vec::new();
    let mut rejected = Vec::new();
    for profile in profiles.iter() {
        let mut failures = Vec::new();
        if reqs.required_rate > profile.max_data_rate {
            failures.push(format!(
                "rate: needs {:.3e} b/s, max is {:.3e} b/s",
                reqs.required_rate, profile.max_data_rate
            ));
        }
        if reqs.required_range > profile.nominal_range.max() {
            failures.push(format!(
                "range: needs {} m, nominal max is {} m",
                reqs.required_range,
                profile.nominal_range.max()
            ));
        }
        if reqs.node_count > profile.max_cell_nodes {
            failures.push(format!(
                "nodes: needs {}, cell supports {}",
                reqs.node_count, profile.max_cell_nodes
            ));
        }
        if failures.is_empty() {
            feasible.push(profile);
        } else {
            rejected.push((profile.name.clone(), failures.join("; ")));
        }
    }
    (feasible, rejected)
}

struct RawMetrics {
    name: String,
    /// Transmit energy in mJ/Mb (lower is better).
    energy: f64,
    /// Coding efficiency at the message size, percent (higher is better).
    efficiency: f64,
    /// Transmission time for the message, seconds (lower is better).
    txtime: f64,
}

/// Min-max normalization where *smaller* raw values map to 1.0. If all
/// profiles are equal on the metric, everyone gets 1.0.
fn normalize_lower_better(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if (hi - lo).abs() < 1e-300 * hi.abs().max(1.0) {
        return vec![1.0; values.len()];
    }
    values.iter().map(|v| (hi - v) / (hi - lo)).collect()
}

fn normalize_higher_better(values: &[f64]) -> Vec<f64> {
    normalize_lower_better(&values.iter().map(|v| -v).collect::<Vec<_>>())
}

/// Ranks the feasible profiles by weighted score. `battery_constrained`
/// doubles the energy weight before normalization. Ties break by lower
/// transmit energy, then by name.
pub fn rank(
    reqs: &ApplicationRequirements,
    profiles: &ProfileSet,
    weights: &ScoreWeights,
) -> Result<Vec<Recommendation>, EmptyFeasibleSet> {
    reqs.validate().map_err(|e| EmptyFeasibleSet {
        reasons: vec![("<requirements>".to_string(), e.to_string())],
    })?;
    weights.validate().map_err(|e| EmptyFeasibleSet {
        reasons: vec![("<weights>".to_string(), e.to_string())],
    })?;

    let (feasible, rejected) = filter_feasible(reqs, profiles);
    if feasible.is_empty() {
        return Err(EmptyFeasibleSet { reasons: rejected });
    }

    let mut w_energy = weights.w_energy;
    if reqs.battery_constrained {
        w_energy *= 2.0;
    }
    let w_sum = w_energy + weights.w_efficiency + weights.w_txtime;

    let metrics: Vec<RawMetrics> = feasible
        .iter()
        .map(|p| {
            let energy = normalized_energy(&p.chipset)
                .map(|e| e.tx_mj_per_mb)
                .unwrap_or(f64::INFINITY);
            let efficiency =
                coding_efficiency(reqs.message_size, p, PacketizationMode::Ceil).unwrap_or(0.0);
            let txtime = transmission_time(reqs.message_size, p, PacketizationMode::Ceil, 0.0)
                .unwrap_or(f64::INFINITY);
            RawMetrics {
                name: p.name.clone(),
                energy,
                efficiency,
                txtime,
            }
        })
        .collect();

    let n_energy = normalize_lower_better(&metrics.iter().map(|m| m.energy).collect::<Vec<_>>());
    let n_eff =
        normalize_higher_better(&metrics.iter().map(|m| m.efficiency).collect::<Vec<_>>());
    let n_time = normalize_lower_better(&metrics.iter().map(|m| m.txtime).collect::<Vec<_>>());

    let mut recs: Vec<(Recommendation, f64)> = metrics
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let score =
                (w_energy * n_energy[i] + weights.w_efficiency * n_eff[i] + weights.w_txtime * n_time[i])
                    / w_sum;
            let mut per_metric = BTreeMap::new();
            per_metric.insert("energy".to_string(), n_energy[i]);
            per_metric.insert("efficiency".to_string(), n_eff[i]);
            per_metric.insert("txtime".to_string(), n_time[i]);
            let rationale = format!(
                "tx energy {:.4} mJ/Mb, coding efficiency {:.2} % at {} B, \
                 transmission time {:.4e} s",
                m.energy, m.efficiency, reqs.message_size, m.txtime
            );
            (
                Recommendation {
                    profile_name: m.name.clone(),
                    feasible: true,
                    score,
                    per_metric,
                    rationale,
                },
                m.energy,
            )
        })
        .collect();

    recs.sort_by(|(a, ea), (b, eb)| {
        b.score
            .partial_cmp(&a.score)
            .unwrap()
            .then(ea.partial_cmp(eb).unwrap())
            .then(a.profile_name.cmp(&b.profile_name))
    });

    let mut out: Vec<Recommendation> = recs.into_iter().map(|(r, _)| r).collect();
    for (name, reason) in rejected {
        out.push(Recommendation {
            profile_name: name,
            feasible: false,
            score: 0.0,
            per_metric: BTreeMap::new(),
            rationale: reason,
        });
    }
    Ok(out)
}

/// Named requirement preset: requirements plus the weights that encode
/// the category's priorities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequirementPreset {
    pub requirements: ApplicationRequirements,
    pub weights: ScoreWeights,
}

/// Built-in presets, keyed by kebab-case name.
///
/// The `environmental-monitoring` weights lean hard on coding
/// efficiency: for tiny periodic reports the dominant concern is how
/// little of each frame is overhead, and the low-duty-cycle radio is
/// off most of the time, so raw per-megabit energy matters less than
/// the default weighting assumes.
pub fn builtin_presets() -> BTreeMap<String, RequirementPreset> {
    let mut presets = BTreeMap::new();
    presets.insert(
        "environmental-monitoring".to_string(),
        RequirementPreset {
            requirements: ApplicationRequirements {
                category: ApplicationCategory::EnvironmentalMonitoring,
                required_rate: 250e3,
                required_range: 50.0,
                node_count: 100,
                message_size: 16,
                battery_constrained: true,
                needs_permanent_connection: false,
                topology: Topology::Indirect,
            },
            weights: ScoreWeights {
                w_energy: 0.1,
                w_efficiency: 0.85,
                w_txtime: 0.05,
            },
        },
    );
    presets.insert(
        "video-monitoring".to_string(),
        RequirementPreset {
            requirements: ApplicationRequirements {
                category: ApplicationCategory::EventDetection,
                required_rate: 30e6,
                required_range: 50.0,
                node_count: 10,
                message_size: 2048,
                battery_constrained: false,
                needs_permanent_connection: true,
                topology: Topology::Direct,
            },
            weights: ScoreWeights::default(),
        },
    );
    presets.insert(
        "event-detection".to_string(),
        RequirementPreset {
            requirements: ApplicationRequirements {
                category: ApplicationCategory::EventDetection,
                required_rate: 50e3,
                required_range: 100.0,
                node_count: 200,
                message_size: 32,
                battery_constrained: true,
                needs_permanent_connection: false,
                topology: Topology::Indirect,
            },
            weights: ScoreWeights::default(),
        },
    );
    presets.insert(
        "tracking".to_string(),
        RequirementPreset {
            requirements: ApplicationRequirements {
                category: ApplicationCategory::Tracking,
                required_rate: 20e3,
                required_range: 10e3,
                node_count: 50,
                message_size: 64,
                battery_constrained: true,
                needs_permanent_connection: true,
                topology: Topology::Direct,
            },
            weights: ScoreWeights::default(),
        },
    );
    presets
}
