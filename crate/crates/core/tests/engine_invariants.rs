//! Cross-module checks on whole scenario runs: metric definitions recompute
//! from the per-report details, hop growth behaves, and the three headline
//! metrics stay inside their ranges.

use vouch_core::engine::{run_scenario, CryptoMode, ScenarioConfig, ScenarioResult};
use vouch_core::mobility::Field;
use vouch_core::protocol::VoteDecision;

fn base(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        duration: 1500.0,
        warmup: 600.0,
        field: Field { width: 1200.0, height: 1200.0 },
        node_count: 150,
        event_count: 25,
        negotiation_interval_min: 180.0,
        negotiation_interval_max: 360.0,
        hop_limit: 2,
        malicious_ratio: 0.2,
        crypto_mode: CryptoMode::Model,
        seed,
        ..ScenarioConfig::default()
    }
}

fn recompute_metrics(result: &ScenarioResult) {
    assert_eq!(result.reports.len(), result.reports_total);
    let mean = result.reports.iter().map(|r| r.witnesses.len() as f64).sum::<f64>()
        / result.reports_total.max(1) as f64;
    assert!((result.avg_witnesses - mean).abs() < 1e-9);

    let mut unsure = 0usize;
    let mut decisive_benign = 0usize;
    let mut majorities = 0usize;
    for report in &result.reports {
        let benign_true = report
            .witnesses
            .iter()
            .filter(|w| !w.malicious && w.decision == VoteDecision::True)
            .count();
        assert_eq!(benign_true, report.decisive_benign);
        unsure += report.unsure;
        decisive_benign += report.decisive_benign;
        if report.benign_majority {
            majorities += 1;
        }
        assert_eq!(report.benign_majority, report.decisive_benign > report.malicious);
    }
    let expect_unsure = if unsure + decisive_benign == 0 {
        0.0
    } else {
        unsure as f64 / (unsure + decisive_benign) as f64
    };
    assert!((result.unsure_ratio - expect_unsure).abs() < 1e-9);
    let expect_majority = if result.reports_total == 0 {
        0.0
    } else {
        majorities as f64 / result.reports_total as f64
    };
    assert!((result.benign_majority_ratio - expect_majority).abs() < 1e-9);
}

#[test]
fn headline_metrics_recompute_from_report_details() {
    for seed in [3, 17] {
        let result = run_scenario(&base(seed)).unwrap();
        assert!(result.reports_total > 0, "seed {seed} produced no reports");
        recompute_metrics(&result);
        assert!(result.avg_witnesses >= 0.0);
        assert!((0.0..=1.0).contains(&result.unsure_ratio));
        assert!((0.0..=1.0).contains(&result.benign_majority_ratio));
    }
}

#[test]
fn witness_lists_are_sorted_unique_and_exclude_reporter() {
    let result = run_scenario(&base(11)).unwrap();
    for report in &result.reports {
        let ids: Vec<u32> = report.witnesses.iter().map(|w| w.node).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert!(!ids.contains(&report.reporter));
    }
}

#[test]
fn widening_the_hop_limit_never_shrinks_the_witness_pool() {
    // Same seed: trajectories and negotiation instants coincide, so each
    // report's token groups can only grow with k.
    let k1 = run_scenario(&ScenarioConfig { hop_limit: 1, ..base(5) }).unwrap();
    let k3 = run_scenario(&ScenarioConfig { hop_limit: 3, ..base(5) }).unwrap();
    assert!(k3.avg_witnesses >= k1.avg_witnesses);
    assert!(k3.reports_total > 0);
}

#[test]
fn model_and_real_crypto_match_on_seeded_scenarios() {
    use vouch_core::engine::CryptoGroup;
    for seed in [1, 2, 3, 4, 5] {
        let cfg = ScenarioConfig {
            duration: 900.0,
            warmup: 300.0,
            node_count: 90,
            event_count: 15,
            ..base(seed)
        };
        let model = run_scenario(&cfg).unwrap();
        let real = run_scenario(&ScenarioConfig {
            crypto_mode: CryptoMode::Real,
            crypto_group: CryptoGroup::Safe64,
            ..cfg
        })
        .unwrap();
        assert_eq!(model.reports_total, real.reports_total);
        assert_eq!(model.avg_witnesses, real.avg_witnesses);
        assert_eq!(model.unsure_ratio, real.unsure_ratio);
        assert_eq!(model.benign_majority_ratio, real.benign_majority_ratio);
        for (m, r) in model.reports.iter().zip(&real.reports) {
            assert_eq!(m.reporter, r.reporter);
            let mw: Vec<u32> = m.witnesses.iter().map(|w| w.node).collect();
            let rw: Vec<u32> = r.witnesses.iter().map(|w| w.node).collect();
            assert_eq!(mw, rw);
        }
    }
}

#[test]
fn malicious_nodes_never_report() {
    let result = run_scenario(&ScenarioConfig { malicious_ratio: 0.5, ..base(23) }).unwrap();
    assert!(result.reports_total > 0);
    for report in &result.reports {
        for w in &report.witnesses {
            if w.node == report.reporter {
                panic!("reporter listed as witness");
            }
        }
        assert_eq!(
            report.witnesses.iter().filter(|w| w.malicious).count(),
            report.malicious
        );
    }
}

#[test]
fn trajectory_dump_is_resimulable_sanity() {
    let cfg = ScenarioConfig { trajectory_interval: 300.0, ..base(2) };
    let result = run_scenario(&cfg).unwrap();
    assert!(!result.trajectories.is_empty());
    for &(t, _node, x, y) in &result.trajectories {
        assert!(x >= 0.0 && x <= cfg.field.width);
        assert!(y >= 0.0 && y <= cfg.field.height);
        assert!(t % 300.0 == 0.0);
    }
}
