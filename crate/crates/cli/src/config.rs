//! Flat dotted-key configuration: `key = value` lines, `#` comments,
//! environment overrides under the `VOUCH_` prefix, and a resolved echo that
//! re-parses to the same configuration.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;
use vouch_core::engine::{ConfigError, CryptoGroup, CryptoMode, ScenarioConfig};
use vouch_core::mobility::{MobilityConfig, MobilityModel};
use vouch_core::connectivity::RadioMode;
use vouch_core::sweep::SweepSpec;

pub const ENV_PREFIX: &str = "VOUCH_";

/// Every recognized key, in echo order.
pub const KEYS: &[&str] = &[
    "sim.duration_s",
    "sim.warmup_s",
    "sim.step_s",
    "sim.seed",
    "sim.node_count",
    "sim.event_count",
    "sim.event_radius_min_m",
    "sim.event_radius_max_m",
    "sim.rp_count",
    "sim.trajectory_interval_s",
    "field.width_m",
    "field.height_m",
    "mobility.model",
    "mobility.speed_min_mps",
    "mobility.speed_max_mps",
    "mobility.pause_max_s",
    "mobility.group_mean",
    "mobility.group_var",
    "mobility.group_radius_m",
    "mobility.roaming_radius_m",
    "radio.mode",
    "radio.range_m",
    "radio.tx_power_dbm",
    "radio.path_loss_exponent",
    "radio.shadowing_sigma_db",
    "radio.sensitivity_dbm",
    "radio.reference_loss_db",
    "protocol.hop_limit",
    "protocol.token_validity_s",
    "protocol.negotiation_interval_min_s",
    "protocol.negotiation_interval_max_s",
    "protocol.malicious_ratio",
    "crypto.mode",
    "crypto.group",
    "sweep.models",
    "sweep.hop_limits",
    "sweep.malicious_ratios",
    "sweep.repetitions",
    "sweep.master_seed",
];

#[derive(Debug, Error, PartialEq)]
pub enum ConfigFileError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("{key}: {message}")]
    BadValue { key: String, message: String },
    #[error("{key}: {source}")]
    Invalid {
        key: String,
        #[source]
        source: ConfigError,
    },
}

/// Key/value pairs from one source, in appearance order.
pub type Pairs = Vec<(String, String)>;

/// Parses config text. Rejects unknown and duplicate keys by name and line.
pub fn parse_text(text: &str) -> Result<Pairs, ConfigFileError> {
    let mut pairs: Pairs = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(ConfigFileError::Syntax { line, text: trimmed.to_string() });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigFileError::UnknownKey { line, key });
        }
        if !seen.insert(key.clone()) {
            return Err(ConfigFileError::DuplicateKey { line, key });
        }
        pairs.push((key, value));
    }
    Ok(pairs)
}

/// Extracts overrides for known keys from environment-style variables:
/// `VOUCH_` plus the key uppercased with dots as underscores.
pub fn env_overrides(vars: impl Iterator<Item = (String, String)>) -> Pairs {
    let known: Vec<(String, &str)> = KEYS
        .iter()
        .map(|k| (format!("{ENV_PREFIX}{}", k.replace('.', "_").to_uppercase()), *k))
        .collect();
    let mut out = Pairs::new();
    for (name, value) in vars {
        if let Some((_, key)) = known.iter().find(|(env_name, _)| *env_name == name) {
            out.push((key.to_string(), value));
        }
    }
    out.sort();
    out
}

/// Command-line overrides applied after file and environment.
#[derive(Debug, Default, Clone, Copy)]
pub struct CliOverrides {
    pub seed: Option<u64>,
    pub repetitions: Option<usize>,
}

/// A fully resolved configuration: one scenario plus the sweep axes.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub scenario: ScenarioConfig,
    pub models: Vec<MobilityModel>,
    pub hop_limits: Vec<usize>,
    pub malicious_ratios: Vec<f64>,
    pub repetitions: usize,
    pub master_seed: u64,
    /// None means "per-model default" (60 s, NC reference points 900 s).
    pause_max: Option<f64>,
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigFileError> {
    value.parse().map_err(|_| ConfigFileError::BadValue {
        key: key.to_string(),
        message: format!("`{value}` is not a number"),
    })
}

fn parse_u64(key: &str, value: &str) -> Result<u64, ConfigFileError> {
    value.parse().map_err(|_| ConfigFileError::BadValue {
        key: key.to_string(),
        message: format!("`{value}` is not a nonnegative integer"),
    })
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ConfigFileError> {
    value.parse().map_err(|_| ConfigFileError::BadValue {
        key: key.to_string(),
        message: format!("`{value}` is not a nonnegative integer"),
    })
}

fn parse_list<T>(
    key: &str,
    value: &str,
    mut item: impl FnMut(&str, &str) -> Result<T, ConfigFileError>,
) -> Result<Vec<T>, ConfigFileError> {
    let items: Vec<&str> = value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(ConfigFileError::BadValue {
            key: key.to_string(),
            message: "list must not be empty".to_string(),
        });
    }
    items.into_iter().map(|s| item(key, s)).collect()
}

fn bad_choice(key: &str, value: &str, choices: &str) -> ConfigFileError {
    ConfigFileError::BadValue {
        key: key.to_string(),
        message: format!("`{value}` is not one of {choices}"),
    }
}

/// The config key whose constraint a scenario-level error violates.
fn offending_key(err: &ConfigError) -> &'static str {
    use vouch_core::connectivity::RadioError;
    use vouch_core::mobility::MobilityError;
    match err {
        ConfigError::Warmup => "sim.warmup_s",
        ConfigError::Step => "sim.step_s",
        ConfigError::NodeCount => "sim.node_count",
        ConfigError::MaliciousRatio => "protocol.malicious_ratio",
        ConfigError::EventRadius => "sim.event_radius_min_m",
        ConfigError::NegotiationInterval => "protocol.negotiation_interval_min_s",
        ConfigError::HopLimit => "protocol.hop_limit",
        ConfigError::TokenValidity => "protocol.token_validity_s",
        ConfigError::RpCount => "sim.rp_count",
        ConfigError::TrajectoryInterval => "sim.trajectory_interval_s",
        ConfigError::EmptySweepAxis => "sweep.models",
        ConfigError::Mobility(MobilityError::BadSpeeds) => "mobility.speed_min_mps",
        ConfigError::Mobility(MobilityError::BadPause) => "mobility.pause_max_s",
        ConfigError::Mobility(MobilityError::BadRadius) => "mobility.group_radius_m",
        ConfigError::Mobility(MobilityError::BadGroupSize) => "mobility.group_mean",
        ConfigError::Radio(RadioError::BadRange) => "radio.range_m",
        ConfigError::Radio(RadioError::BadExponent) => "radio.path_loss_exponent",
        ConfigError::Radio(RadioError::BadSigma) => "radio.shadowing_sigma_db",
    }
}

fn named(err: ConfigError) -> ConfigFileError {
    ConfigFileError::Invalid { key: offending_key(&err).to_string(), source: err }
}

/// Applies file pairs, then environment pairs, then flags, over the defaults,
/// and validates the result.
pub fn resolve(
    file: &Pairs,
    env: &Pairs,
    cli: CliOverrides,
) -> Result<Resolved, ConfigFileError> {
    let mut scenario = ScenarioConfig::default();
    scenario.seed = 42;
    let mut models = vec![MobilityModel::Rwp, MobilityModel::Rpgm, MobilityModel::Nc];
    let mut hop_limits: Vec<usize> = (1..=6).collect();
    let mut malicious_ratios: Vec<f64> = (0..=8).map(|i| i as f64 * 0.05).collect();
    let mut repetitions = 10usize;
    let mut master_seed = 42u64;
    let mut pause_max: Option<f64> = None;

    for (key, value) in file.iter().chain(env) {
        let k = key.as_str();
        let v = value.as_str();
        match k {
            "sim.duration_s" => scenario.duration = parse_f64(k, v)?,
            "sim.warmup_s" => scenario.warmup = parse_f64(k, v)?,
            "sim.step_s" => scenario.step = parse_f64(k, v)?,
            "sim.seed" => scenario.seed = parse_u64(k, v)?,
            "sim.node_count" => scenario.node_count = parse_usize(k, v)?,
            "sim.event_count" => scenario.event_count = parse_usize(k, v)?,
            "sim.event_radius_min_m" => scenario.event_radius_min = parse_f64(k, v)?,
            "sim.event_radius_max_m" => scenario.event_radius_max = parse_f64(k, v)?,
            "sim.rp_count" => scenario.rp_count = parse_usize(k, v)?,
            "sim.trajectory_interval_s" => scenario.trajectory_interval = parse_f64(k, v)?,
            "field.width_m" => scenario.field.width = parse_f64(k, v)?,
            "field.height_m" => scenario.field.height = parse_f64(k, v)?,
            "mobility.model" => {
                scenario.mobility.model = MobilityModel::parse(v)
                    .ok_or_else(|| bad_choice(k, v, "rwp, rpgm, nc"))?
            }
            "mobility.speed_min_mps" => scenario.mobility.speed_min = parse_f64(k, v)?,
            "mobility.speed_max_mps" => scenario.mobility.speed_max = parse_f64(k, v)?,
            "mobility.pause_max_s" => pause_max = Some(parse_f64(k, v)?),
            "mobility.group_mean" => scenario.mobility.group_mean = parse_f64(k, v)?,
            "mobility.group_var" => scenario.mobility.group_var = parse_f64(k, v)?,
            "mobility.group_radius_m" => scenario.mobility.group_radius = parse_f64(k, v)?,
            "mobility.roaming_radius_m" => scenario.mobility.roaming_radius = parse_f64(k, v)?,
            "radio.mode" => {
                scenario.radio.mode =
                    RadioMode::parse(v).ok_or_else(|| bad_choice(k, v, "disk, lognormal"))?
            }
            "radio.range_m" => scenario.radio.range = parse_f64(k, v)?,
            "radio.tx_power_dbm" => scenario.radio.tx_power = parse_f64(k, v)?,
            "radio.path_loss_exponent" => scenario.radio.path_loss_exponent = parse_f64(k, v)?,
            "radio.shadowing_sigma_db" => scenario.radio.shadowing_sigma = parse_f64(k, v)?,
            "radio.sensitivity_dbm" => scenario.radio.sensitivity = parse_f64(k, v)?,
            "radio.reference_loss_db" => scenario.radio.reference_loss_db = parse_f64(k, v)?,
            "protocol.hop_limit" => scenario.hop_limit = parse_usize(k, v)?,
            "protocol.token_validity_s" => scenario.token_validity = parse_f64(k, v)?,
            "protocol.negotiation_interval_min_s" => {
                scenario.negotiation_interval_min = parse_f64(k, v)?
            }
            "protocol.negotiation_interval_max_s" => {
                scenario.negotiation_interval_max = parse_f64(k, v)?
            }
            "protocol.malicious_ratio" => scenario.malicious_ratio = parse_f64(k, v)?,
            "crypto.mode" => {
                scenario.crypto_mode =
                    CryptoMode::parse(v).ok_or_else(|| bad_choice(k, v, "model, real"))?
            }
            "crypto.group" => {
                scenario.crypto_group =
                    CryptoGroup::parse(v).ok_or_else(|| bad_choice(k, v, "modp2048, safe64"))?
            }
            "sweep.models" => {
                models = parse_list(k, v, |k, s| {
                    MobilityModel::parse(s).ok_or_else(|| bad_choice(k, s, "rwp, rpgm, nc"))
                })?
            }
            "sweep.hop_limits" => hop_limits = parse_list(k, v, parse_usize)?,
            "sweep.malicious_ratios" => malicious_ratios = parse_list(k, v, parse_f64)?,
            "sweep.repetitions" => repetitions = parse_usize(k, v)?,
            "sweep.master_seed" => master_seed = parse_u64(k, v)?,
            _ => unreachable!("parse_text admits only known keys"),
        }
    }

    if let Some(seed) = cli.seed {
        scenario.seed = seed;
        master_seed = seed;
    }
    if let Some(reps) = cli.repetitions {
        repetitions = reps;
    }

    let resolved = Resolved {
        scenario,
        models,
        hop_limits,
        malicious_ratios,
        repetitions,
        master_seed,
        pause_max,
    };
    let resolved = resolved.materialized();
    resolved.scenario.validate().map_err(named)?;
    for model in &resolved.models {
        resolved.mobility_for(*model).validate().map_err(|e| named(e.into()))?;
    }
    if resolved.repetitions == 0 {
        return Err(named(ConfigError::EmptySweepAxis));
    }
    Ok(resolved)
}

impl Resolved {
    /// The mobility settings a given model runs with: shared overrides plus
    /// the per-model pause default when none was set explicitly.
    pub fn mobility_for(&self, model: MobilityModel) -> MobilityConfig {
        MobilityConfig {
            model,
            pause_max: self.pause_max.unwrap_or_else(|| {
                MobilityConfig::for_model(model).pause_max
            }),
            ..self.scenario.mobility
        }
    }

    fn materialized(mut self) -> Self {
        self.scenario.mobility = self.mobility_for(self.scenario.mobility.model);
        self
    }

    pub fn sweep_spec(&self) -> SweepSpec {
        SweepSpec {
            base: self.scenario,
            models: self.models.iter().map(|m| self.mobility_for(*m)).collect(),
            hop_limits: self.hop_limits.clone(),
            malicious_ratios: self.malicious_ratios.clone(),
            repetitions: self.repetitions,
            master_seed: self.master_seed,
        }
    }

    /// Resolved settings in config syntax. Parsing the echo reproduces this
    /// configuration exactly, including the per-model pause defaulting.
    pub fn echo(&self) -> String {
        let s = &self.scenario;
        let mut out = String::from("# resolved configuration\n");
        let mut kv = |key: &str, value: String| {
            writeln!(out, "{key} = {value}").expect("string write");
        };
        kv("sim.duration_s", s.duration.to_string());
        kv("sim.warmup_s", s.warmup.to_string());
        kv("sim.step_s", s.step.to_string());
        kv("sim.seed", s.seed.to_string());
        kv("sim.node_count", s.node_count.to_string());
        kv("sim.event_count", s.event_count.to_string());
        kv("sim.event_radius_min_m", s.event_radius_min.to_string());
        kv("sim.event_radius_max_m", s.event_radius_max.to_string());
        kv("sim.rp_count", s.rp_count.to_string());
        kv("sim.trajectory_interval_s", s.trajectory_interval.to_string());
        kv("field.width_m", s.field.width.to_string());
        kv("field.height_m", s.field.height.to_string());
        kv("mobility.model", s.mobility.model.label().to_string());
        kv("mobility.speed_min_mps", s.mobility.speed_min.to_string());
        kv("mobility.speed_max_mps", s.mobility.speed_max.to_string());
        match self.pause_max {
            Some(p) => kv("mobility.pause_max_s", p.to_string()),
            None => {
                writeln!(
                    out,
                    "# mobility.pause_max_s unset: per-model default ({} s for {})",
                    s.mobility.pause_max,
                    s.mobility.model.label()
                )
                .expect("string write");
            }
        }
        let mut kv = |key: &str, value: String| {
            writeln!(out, "{key} = {value}").expect("string write");
        };
        kv("mobility.group_mean", s.mobility.group_mean.to_string());
        kv("mobility.group_var", s.mobility.group_var.to_string());
        kv("mobility.group_radius_m", s.mobility.group_radius.to_string());
        kv("mobility.roaming_radius_m", s.mobility.roaming_radius.to_string());
        kv("radio.mode", s.radio.mode.label().to_string());
        kv("radio.range_m", s.radio.range.to_string());
        kv("radio.tx_power_dbm", s.radio.tx_power.to_string());
        kv("radio.path_loss_exponent", s.radio.path_loss_exponent.to_string());
        kv("radio.shadowing_sigma_db", s.radio.shadowing_sigma.to_string());
        kv("radio.sensitivity_dbm", s.radio.sensitivity.to_string());
        kv("radio.reference_loss_db", s.radio.reference_loss_db.to_string());
        kv("protocol.hop_limit", s.hop_limit.to_string());
        kv("protocol.token_validity_s", s.token_validity.to_string());
        kv("protocol.negotiation_interval_min_s", s.negotiation_interval_min.to_string());
        kv("protocol.negotiation_interval_max_s", s.negotiation_interval_max.to_string());
        kv("protocol.malicious_ratio", s.malicious_ratio.to_string());
        kv("crypto.mode", s.crypto_mode.label().to_string());
        kv("crypto.group", s.crypto_group.label().to_string());
        kv(
            "sweep.models",
            self.models.iter().map(|m| m.label()).collect::<Vec<_>>().join(","),
        );
        kv(
            "sweep.hop_limits",
            self.hop_limits.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
        );
        kv(
            "sweep.malicious_ratios",
            self.malicious_ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","),
        );
        kv("sweep.repetitions", self.repetitions.to_string());
        kv("sweep.master_seed", self.master_seed.to_string());
        out
    }
}

/// Loads and resolves a config file (or pure defaults when `path` is None),
/// with real process environment overrides applied.
pub fn load(path: Option<&Path>, cli: CliOverrides) -> Result<Resolved, ConfigFileError> {
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| ConfigFileError::BadValue {
                key: p.display().to_string(),
                message: format!("cannot read config: {e}"),
            })?;
            parse_text(&text)?
        }
        None => Pairs::new(),
    };
    let env = env_overrides(std::env::vars());
    resolve(&file, &env, cli)
}
