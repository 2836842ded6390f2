//! Deterministic scenario simulation: mobility plus proximity-token
//! negotiation over instantaneous connectivity snapshots, event reporting,
//! witness voting, and metric computation.
//!
//! One scenario is a single sequential execution driven by three independent
//! random streams derived from the run seed: `sim` (mobility, timers, event
//! placement, shadowing), `crypto` (group keys), and `roles` (malicious-node
//! selection). Keeping the streams apart means switching the crypto mode or
//! growing the malicious set never perturbs trajectories, so witness sets
//! stay comparable across those axes.

use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::connectivity::{k_hop_from_grid, max_link_distance, RadioConfig, RadioError, SpatialGrid};
use crate::crypto::{gdh_exchange, GroupKey, GroupParams};
use crate::mobility::{self, Field, MobilityConfig, MobilityError, Vec2};
use crate::protocol::{TokenRecord, VoteDecision};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CryptoMode {
    /// Group keys are fresh random 256-bit values.
    Model,
    /// Group keys come from a full GDH exchange among the members.
    Real,
}

impl CryptoMode {
    pub fn label(self) -> &'static str {
        match self {
            CryptoMode::Model => "model",
            CryptoMode::Real => "real",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "model" => Some(CryptoMode::Model),
            "real" => Some(CryptoMode::Real),
            _ => None,
        }
    }
}

/// Group used when crypto_mode is real.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CryptoGroup {
    Modp2048,
    Safe64,
}

impl CryptoGroup {
    pub fn label(self) -> &'static str {
        match self {
            CryptoGroup::Modp2048 => "modp2048",
            CryptoGroup::Safe64 => "safe64",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "modp2048" => Some(CryptoGroup::Modp2048),
            "safe64" => Some(CryptoGroup::Safe64),
            _ => None,
        }
    }

    pub fn params(self) -> GroupParams {
        match self {
            CryptoGroup::Modp2048 => GroupParams::modp_2048(),
            CryptoGroup::Safe64 => GroupParams::safe64(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("warmup must be nonnegative and smaller than duration")]
    Warmup,
    #[error("step must be positive")]
    Step,
    #[error("node_count must be at least 1")]
    NodeCount,
    #[error("malicious_ratio must lie in [0, 1]")]
    MaliciousRatio,
    #[error("event radii must satisfy 0 < min <= max")]
    EventRadius,
    #[error("negotiation interval must satisfy 0 < min <= max")]
    NegotiationInterval,
    #[error("hop_limit must be at least 1")]
    HopLimit,
    #[error("token_validity must be positive")]
    TokenValidity,
    #[error("rp_count must be at least 1")]
    RpCount,
    #[error("trajectory_interval must be nonnegative")]
    TrajectoryInterval,
    #[error("sweep axes and repetitions must be non-empty")]
    EmptySweepAxis,
    #[error(transparent)]
    Mobility(#[from] MobilityError),
    #[error(transparent)]
    Radio(#[from] RadioError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub duration: f64,
    pub warmup: f64,
    pub step: f64,
    pub field: Field,
    pub node_count: usize,
    pub event_count: usize,
    pub event_radius_min: f64,
    pub event_radius_max: f64,
    pub negotiation_interval_min: f64,
    pub negotiation_interval_max: f64,
    pub hop_limit: usize,
    pub token_validity: f64,
    pub malicious_ratio: f64,
    pub mobility: MobilityConfig,
    pub radio: RadioConfig,
    pub rp_count: usize,
    pub crypto_mode: CryptoMode,
    pub crypto_group: CryptoGroup,
    pub seed: u64,
    /// Seconds between trajectory samples; 0 disables the dump.
    pub trajectory_interval: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            duration: 7200.0,
            warmup: 3600.0,
            step: 1.0,
            field: Field {
                width: 5000.0,
                height: 5000.0,
            },
            node_count: 2000,
            event_count: 100,
            event_radius_min: 25.0,
            event_radius_max: 250.0,
            negotiation_interval_min: 900.0,
            negotiation_interval_max: 1800.0,
            hop_limit: 1,
            token_validity: 300.0,
            malicious_ratio: 0.0,
            mobility: MobilityConfig::rwp(),
            radio: RadioConfig::default(),
            rp_count: 16,
            crypto_mode: CryptoMode::Model,
            crypto_group: CryptoGroup::Modp2048,
            seed: 0,
            trajectory_interval: 0.0,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.warmup >= 0.0 && self.warmup < self.duration) {
            return Err(ConfigError::Warmup);
        }
        if self.step <= 0.0 {
            return Err(ConfigError::Step);
        }
        if self.node_count < 1 {
            return Err(ConfigError::NodeCount);
        }
        if !(0.0..=1.0).contains(&self.malicious_ratio) {
            return Err(ConfigError::MaliciousRatio);
        }
        if self.event_count > 0
            && !(self.event_radius_min > 0.0 && self.event_radius_min <= self.event_radius_max)
        {
            return Err(ConfigError::EventRadius);
        }
        if !(self.negotiation_interval_min > 0.0
            && self.negotiation_interval_min <= self.negotiation_interval_max)
        {
            return Err(ConfigError::NegotiationInterval);
        }
        if self.hop_limit < 1 {
            return Err(ConfigError::HopLimit);
        }
        if self.token_validity <= 0.0 {
            return Err(ConfigError::TokenValidity);
        }
        if self.rp_count < 1 {
            return Err(ConfigError::RpCount);
        }
        if self.trajectory_interval < 0.0 {
            return Err(ConfigError::TrajectoryInterval);
        }
        self.mobility.validate()?;
        self.radio.validate()?;
        Ok(())
    }
}

/// A reportable circular event, active from the end of warmup.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub center: Vec2,
    pub radius: f64,
}

impl Event {
    pub fn contains(&self, p: Vec2) -> bool {
        p.distance(self.center) <= self.radius
    }
}

/// One witness of one report, with the inputs that determined its vote.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessRecord {
    pub node: u32,
    pub malicious: bool,
    pub in_area_at_report: bool,
    pub decision: VoteDecision,
}

/// Everything recorded about one report.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportDetail {
    pub event: usize,
    pub reporter: u32,
    pub time: f64,
    /// Tokens the report carried.
    pub alphas: usize,
    pub witnesses: Vec<WitnessRecord>,
    pub decisive_benign: usize,
    pub malicious: usize,
    pub unsure: usize,
    pub benign_majority: bool,
}

pub type TrajectorySample = (f64, u32, f64, f64);

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioResult {
    pub reports_total: usize,
    pub avg_witnesses: f64,
    pub avg_benign_witnesses: f64,
    /// Unsure benign votes over all benign votes, pooled across reports.
    pub unsure_ratio: f64,
    pub benign_majority_ratio: f64,
    /// No event was ever reported; the ratios above default to 0.
    pub zero_reports: bool,
    pub reports: Vec<ReportDetail>,
    pub trajectories: Vec<TrajectorySample>,
}

/// Vote behavior: malicious witnesses always vote against the report, benign
/// witnesses confirm only what they saw and are unsure otherwise.
pub fn decide_vote(malicious: bool, in_area_at_report: bool) -> VoteDecision {
    if malicious {
        VoteDecision::False
    } else if in_area_at_report {
        VoteDecision::True
    } else {
        VoteDecision::Unsure
    }
}

/// Strictly more decisive benign votes than malicious votes.
pub fn benign_majority(decisive_benign: usize, malicious_votes: usize) -> bool {
    decisive_benign > malicious_votes
}

fn group_key(
    mode: CryptoMode,
    params: &GroupParams,
    member_count: usize,
    rng: &mut ChaCha8Rng,
) -> GroupKey {
    match mode {
        CryptoMode::Model => {
            let mut raw = vec![0u8; 32];
            rng.fill_bytes(&mut raw);
            GroupKey::from_raw(raw)
        }
        CryptoMode::Real => {
            let one = BigUint::one();
            let secrets: Vec<BigUint> = (0..member_count)
                .map(|_| rng.gen_biguint_range(&one, &params.q))
                .collect();
            let (key, _) = gdh_exchange(params, &secrets).expect("negotiation preconditions hold");
            key
        }
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult, ConfigError> {
    cfg.validate()?;
    let n = cfg.node_count;
    let dt = cfg.step;
    let steps = (cfg.duration / dt).round() as usize;
    let warmup_step = (cfg.warmup / dt).ceil() as usize;

    let mut seeder = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sim_rng = ChaCha8Rng::seed_from_u64(seeder.next_u64());
    let mut crypto_rng = ChaCha8Rng::seed_from_u64(seeder.next_u64());
    let mut roles_rng = ChaCha8Rng::seed_from_u64(seeder.next_u64());

    // Population, adversary roles, events, negotiation timers.
    let mut pop = mobility::init_population(n, &cfg.mobility, &cfg.field, &mut sim_rng);
    let mut malicious = vec![false; n];
    let malicious_count = (cfg.malicious_ratio * n as f64).round() as usize;
    let mut ranking: Vec<u32> = (0..n as u32).collect();
    ranking.shuffle(&mut roles_rng);
    for &node in &ranking[..malicious_count.min(n)] {
        malicious[node as usize] = true;
    }
    let events: Vec<Event> = (0..cfg.event_count)
        .map(|_| Event {
            center: cfg.field.sample(&mut sim_rng),
            radius: sim_rng.gen_range(cfg.event_radius_min..=cfg.event_radius_max),
        })
        .collect();
    let mut next_fire: Vec<f64> = (0..n)
        .map(|_| {
            sim_rng.gen_range(cfg.negotiation_interval_min..=cfg.negotiation_interval_max)
        })
        .collect();

    let params = cfg.crypto_group.params();
    let mut stores: Vec<Vec<TokenRecord>> = vec![Vec::new(); n];
    let mut registry: HashMap<crate::crypto::Digest, Vec<u32>> = HashMap::new();

    let mut positions = pop.positions();
    let mut grid = SpatialGrid::build(&positions, &cfg.field, max_link_distance(&cfg.radio));
    let event_grid = if events.is_empty() {
        None
    } else {
        let centers: Vec<Vec2> = events.iter().map(|e| e.center).collect();
        Some(SpatialGrid::build(
            &centers,
            &cfg.field,
            cfg.event_radius_max.max(1.0),
        ))
    };

    let mut reported = vec![false; events.len()];
    let mut prev_inside = vec![false; events.len() * n];
    let mut cur_inside = vec![false; events.len() * n];
    let mut entrants: Vec<Vec<u32>> = vec![Vec::new(); events.len()];
    let mut due: Vec<(f64, u32)> = Vec::new();
    let mut details: Vec<ReportDetail> = Vec::new();
    let mut trajectories: Vec<TrajectorySample> = Vec::new();
    let traj_every = if cfg.trajectory_interval > 0.0 {
        (cfg.trajectory_interval / dt).round().max(1.0) as usize
    } else {
        0
    };

    for i in 0..=steps {
        let t = i as f64 * dt;
        if i > 0 {
            mobility::step(&mut pop, &cfg.mobility, &cfg.field, dt, &mut sim_rng);
            positions = pop.positions();
            grid.rebuild(&positions);
        }

        // Token negotiations due at this instant, ordered by (firing time, id).
        due.clear();
        for (id, fire) in next_fire.iter().enumerate() {
            if *fire <= t {
                due.push((*fire, id as u32));
            }
        }
        due.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for k in 0..due.len() {
            let initiator = due[k].1;
            let neighbors = k_hop_from_grid(
                &positions,
                &grid,
                initiator as usize,
                cfg.hop_limit,
                &cfg.radio,
                &mut sim_rng,
            );
            next_fire[initiator as usize] = t + sim_rng
                .gen_range(cfg.negotiation_interval_min..=cfg.negotiation_interval_max);
            if neighbors.is_empty() {
                continue; // nobody in range, nothing to negotiate
            }
            let mut members = neighbors;
            let at = members.binary_search(&initiator).unwrap_err();
            members.insert(at, initiator);
            let key = group_key(cfg.crypto_mode, &params, members.len(), &mut crypto_rng);
            let record = TokenRecord::new(key, t, cfg.token_validity);
            for &m in &members {
                let store = &mut stores[m as usize];
                store.retain(|r| t < r.received_at + r.validity);
                store.push(record.clone());
            }
            registry.insert(record.tau, members);
        }

        // Event reporting from the end of warmup onward.
        if i >= warmup_step {
            if let Some(egrid) = &event_grid {
                let first_active = i == warmup_step;
                std::mem::swap(&mut prev_inside, &mut cur_inside);
                cur_inside.fill(false);
                for list in &mut entrants {
                    list.clear();
                }
                for (node, p) in positions.iter().enumerate() {
                    for e in egrid.neighborhood(*p) {
                        let e = e as usize;
                        if reported[e] || !events[e].contains(*p) {
                            continue;
                        }
                        let slot = e * n + node;
                        cur_inside[slot] = true;
                        if first_active || !prev_inside[slot] {
                            entrants[e].push(node as u32);
                        }
                    }
                }
                for (e, arrivals) in entrants.iter().enumerate() {
                    let Some(&reporter) =
                        arrivals.iter().find(|&&a| !malicious[a as usize])
                    else {
                        continue;
                    };
                    reported[e] = true;
                    details.push(make_report(
                        e,
                        reporter,
                        t,
                        &events[e],
                        &stores,
                        &registry,
                        &positions,
                        &malicious,
                    ));
                }
            }
        }

        if traj_every > 0 && i % traj_every == 0 {
            for (node, p) in positions.iter().enumerate() {
                trajectories.push((t, node as u32, p.x, p.y));
            }
        }
    }

    // Metrics, pooled over all reports.
    let reports_total = details.len();
    let mut witness_sum = 0usize;
    let mut benign_witness_sum = 0usize;
    let mut unsure_votes = 0usize;
    let mut benign_votes = 0usize;
    let mut majorities = 0usize;
    for d in &details {
        witness_sum += d.witnesses.len();
        benign_witness_sum += d.witnesses.len() - d.malicious;
        unsure_votes += d.unsure;
        benign_votes += d.unsure + d.decisive_benign;
        majorities += d.benign_majority as usize;
    }
    let per_report = |sum: usize| {
        if reports_total > 0 {
            sum as f64 / reports_total as f64
        } else {
            0.0
        }
    };
    Ok(ScenarioResult {
        reports_total,
        avg_witnesses: per_report(witness_sum),
        avg_benign_witnesses: per_report(benign_witness_sum),
        unsure_ratio: if benign_votes > 0 {
            unsure_votes as f64 / benign_votes as f64
        } else {
            0.0
        },
        benign_majority_ratio: per_report(majorities),
        zero_reports: reports_total == 0,
        reports: details,
        trajectories,
    })
}

#[allow(clippy::too_many_arguments)]
fn make_report(
    event_idx: usize,
    reporter: u32,
    t: f64,
    event: &Event,
    stores: &[Vec<TokenRecord>],
    registry: &HashMap<crate::crypto::Digest, Vec<u32>>,
    positions: &[Vec2],
    malicious: &[bool],
) -> ReportDetail {
    let alphas: Vec<crate::crypto::Digest> = stores[reporter as usize]
        .iter()
        .filter(|r| r.is_valid_at(t))
        .map(|r| r.tau)
        .collect();
    let mut witnesses: Vec<u32> = Vec::new();
    for tau in &alphas {
        if let Some(members) = registry.get(tau) {
            witnesses.extend(members.iter().copied().filter(|&m| m != reporter));
        }
    }
    witnesses.sort_unstable();
    witnesses.dedup();
    debug_assert!(witnesses.iter().all(|&w| {
        stores[w as usize]
            .iter()
            .any(|r| r.is_valid_at(t) && alphas.contains(&r.tau))
    }));

    let mut decisive_benign = 0;
    let mut malicious_votes = 0;
    let mut unsure = 0;
    let records: Vec<WitnessRecord> = witnesses
        .iter()
        .map(|&w| {
            let is_mal = malicious[w as usize];
            let in_area = event.contains(positions[w as usize]);
            let decision = decide_vote(is_mal, in_area);
            match decision {
                VoteDecision::True => decisive_benign += 1,
                VoteDecision::False => malicious_votes += 1,
                _ => unsure += 1,
            }
            WitnessRecord {
                node: w,
                malicious: is_mal,
                in_area_at_report: in_area,
                decision,
            }
        })
        .collect();
    ReportDetail {
        event: event_idx,
        reporter,
        time: t,
        alphas: alphas.len(),
        witnesses: records,
        decisive_benign,
        malicious: malicious_votes,
        unsure,
        benign_majority: benign_majority(decisive_benign, malicious_votes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Small but busy scenario that finishes in well under a second.
    fn small_config(seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            duration: 1200.0,
            warmup: 600.0,
            field: Field::new(1200.0, 1200.0),
            node_count: 150,
            event_count: 30,
            negotiation_interval_min: 200.0,
            negotiation_interval_max: 400.0,
            hop_limit: 2,
            seed,
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn decide_vote_follows_behavior_rules() {
        assert_eq!(decide_vote(true, true), VoteDecision::False);
        assert_eq!(decide_vote(true, false), VoteDecision::False);
        assert_eq!(decide_vote(false, true), VoteDecision::True);
        assert_eq!(decide_vote(false, false), VoteDecision::Unsure);
    }

    #[test]
    fn majority_requires_strictly_more_benign_votes() {
        assert!(benign_majority(2, 1));
        assert!(!benign_majority(0, 1));
        assert!(!benign_majority(1, 1));
        assert!(!benign_majority(0, 0));
        assert!(benign_majority(1, 0));
    }

    #[test]
    fn zero_events_yield_the_flagged_edge_case() {
        let cfg = ScenarioConfig {
            event_count: 0,
            ..small_config(1)
        };
        let result = run_scenario(&cfg).unwrap();
        assert_eq!(result.reports_total, 0);
        assert!(result.zero_reports);
        assert_eq!(result.avg_witnesses, 0.0);
        assert_eq!(result.unsure_ratio, 0.0);
        assert_eq!(result.benign_majority_ratio, 0.0);
    }

    #[test]
    fn same_seed_reproduces_the_result_exactly() {
        let cfg = small_config(2);
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a, b);
        let c = run_scenario(&small_config(3)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn reporter_is_never_a_witness_and_reports_are_unique_per_event() {
        let result = run_scenario(&small_config(4)).unwrap();
        assert!(result.reports_total > 0, "scenario produced no reports");
        let mut seen = std::collections::HashSet::new();
        for report in &result.reports {
            assert!(seen.insert(report.event), "event reported twice");
            assert!(report.witnesses.iter().all(|w| w.node != report.reporter));
        }
    }

    #[test]
    fn without_adversaries_majority_means_a_decisive_benign_vote() {
        let result = run_scenario(&small_config(5)).unwrap();
        assert!(result.reports_total > 0);
        for report in &result.reports {
            assert_eq!(report.malicious, 0);
            assert_eq!(report.benign_majority, report.decisive_benign >= 1);
        }
        let expected = result
            .reports
            .iter()
            .filter(|r| r.decisive_benign >= 1)
            .count() as f64
            / result.reports_total as f64;
        assert_eq!(result.benign_majority_ratio, expected);
    }

    #[test]
    fn vote_counts_are_consistent_with_witness_records() {
        let cfg = ScenarioConfig {
            malicious_ratio: 0.2,
            ..small_config(6)
        };
        let result = run_scenario(&cfg).unwrap();
        assert!(result.reports_total > 0);
        for report in &result.reports {
            let mut t = 0;
            let mut f = 0;
            let mut u = 0;
            for w in &report.witnesses {
                assert_eq!(w.decision, decide_vote(w.malicious, w.in_area_at_report));
                match w.decision {
                    VoteDecision::True => t += 1,
                    VoteDecision::False => f += 1,
                    _ => u += 1,
                }
            }
            assert_eq!((t, f, u), (report.decisive_benign, report.malicious, report.unsure));
            assert_eq!(report.benign_majority, t > f);
        }
    }

    #[test]
    fn growing_the_malicious_set_never_helps_the_majority() {
        // Same seed, same trajectories: the adversary ranking is drawn from
        // its own stream, so a higher ratio only adds malicious nodes.
        let ratios = [0.0, 0.1, 0.2, 0.3, 0.4];
        let mut last = f64::INFINITY;
        for ratio in ratios {
            let cfg = ScenarioConfig {
                malicious_ratio: ratio,
                ..small_config(7)
            };
            let result = run_scenario(&cfg).unwrap();
            assert!(result.benign_majority_ratio <= last + 1e-12);
            last = result.benign_majority_ratio;
        }
    }

    #[test]
    fn model_and_real_crypto_agree_on_everything_measured() {
        let base = ScenarioConfig {
            node_count: 80,
            duration: 900.0,
            warmup: 450.0,
            field: Field::new(900.0, 900.0),
            event_count: 15,
            crypto_group: CryptoGroup::Safe64,
            ..small_config(8)
        };
        let model = run_scenario(&base).unwrap();
        let real = run_scenario(&ScenarioConfig {
            crypto_mode: CryptoMode::Real,
            ..base
        })
        .unwrap();
        assert!(model.reports_total > 0);
        assert_eq!(model, real);
    }

    #[test]
    fn trajectories_follow_the_sampling_interval() {
        let cfg = ScenarioConfig {
            node_count: 5,
            event_count: 0,
            duration: 100.0,
            warmup: 50.0,
            trajectory_interval: 20.0,
            field: Field::new(200.0, 200.0),
            ..small_config(9)
        };
        let result = run_scenario(&cfg).unwrap();
        // Samples at t = 0, 20, ..., 100 for each of the 5 nodes.
        assert_eq!(result.trajectories.len(), 6 * 5);
        assert!(result.trajectories.iter().all(|(t, ..)| t % 20.0 == 0.0));
    }

    #[test]
    fn validate_names_the_offending_field() {
        let ok = small_config(10);
        assert!(ok.validate().is_ok());
        let bad = |f: fn(&mut ScenarioConfig)| {
            let mut cfg = ok;
            f(&mut cfg);
            cfg.validate().unwrap_err()
        };
        assert_eq!(bad(|c| c.warmup = c.duration), ConfigError::Warmup);
        assert_eq!(bad(|c| c.step = 0.0), ConfigError::Step);
        assert_eq!(bad(|c| c.node_count = 0), ConfigError::NodeCount);
        assert_eq!(bad(|c| c.malicious_ratio = 1.5), ConfigError::MaliciousRatio);
        assert_eq!(bad(|c| c.event_radius_min = 0.0), ConfigError::EventRadius);
        assert_eq!(
            bad(|c| c.negotiation_interval_max = 1.0),
            ConfigError::NegotiationInterval
        );
        assert_eq!(bad(|c| c.hop_limit = 0), ConfigError::HopLimit);
        assert_eq!(bad(|c| c.token_validity = 0.0), ConfigError::TokenValidity);
        assert_eq!(bad(|c| c.rp_count = 0), ConfigError::RpCount);
        assert_eq!(
            bad(|c| c.trajectory_interval = -1.0),
            ConfigError::TrajectoryInterval
        );
        assert_eq!(
            bad(|c| c.mobility.speed_min = 0.0),
            ConfigError::Mobility(MobilityError::BadSpeeds)
        );
        assert_eq!(
            bad(|c| c.radio.range = 0.0),
            ConfigError::Radio(RadioError::BadRange)
        );
    }
}
