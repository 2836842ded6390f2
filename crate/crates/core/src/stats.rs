//! Aggregation of repeated scenario runs into means with 99% confidence
//! intervals (Student's t).

use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::engine::ScenarioResult;

/// A sample mean with its two-sided 99% confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSummary {
    pub mean: f64,
    pub ci99_low: f64,
    pub ci99_high: f64,
}

impl MetricSummary {
    /// True when the two intervals share no point.
    pub fn disjoint_from(&self, other: &MetricSummary) -> bool {
        self.ci99_high < other.ci99_low || other.ci99_high < self.ci99_low
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum AggregateError {
    #[error("need at least 2 runs to form a confidence interval, got {0}")]
    TooFewRuns(usize),
}

/// Per-cell aggregate of the three headline metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateSummary {
    pub runs: usize,
    pub avg_witnesses: MetricSummary,
    pub unsure_ratio: MetricSummary,
    pub benign_majority_ratio: MetricSummary,
}

/// Two-sided 99% CI for the mean of `values` using the t distribution with
/// n-1 degrees of freedom. A single value yields a degenerate interval.
pub fn mean_ci99(values: &[f64]) -> MetricSummary {
    assert!(!values.is_empty(), "mean_ci99 over empty sample");
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return MetricSummary { mean, ci99_low: mean, ci99_high: mean };
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .expect("valid t distribution")
        .inverse_cdf(0.995);
    let half = t * (var / n as f64).sqrt();
    MetricSummary { mean, ci99_low: mean - half, ci99_high: mean + half }
}

/// Aggregates repeated runs of one configuration cell.
pub fn aggregate(results: &[ScenarioResult]) -> Result<AggregateSummary, AggregateError> {
    if results.len() < 2 {
        return Err(AggregateError::TooFewRuns(results.len()));
    }
    let pick = |f: fn(&ScenarioResult) -> f64| -> MetricSummary {
        let values: Vec<f64> = results.iter().map(f).collect();
        mean_ci99(&values)
    };
    Ok(AggregateSummary {
        runs: results.len(),
        avg_witnesses: pick(|r| r.avg_witnesses),
        unsure_ratio: pick(|r| r.unsure_ratio),
        benign_majority_ratio: pick(|r| r.benign_majority_ratio),
    })
}

#[cfg(test)]
mod tests {
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    use super::*;

    #[test]
    fn identical_values_give_zero_width_interval() {
        let s = mean_ci99(&[3.25; 12]);
        assert_eq!(s.mean, 3.25);
        assert_eq!(s.ci99_low, 3.25);
        assert_eq!(s.ci99_high, 3.25);
    }

    #[test]
    fn single_value_is_degenerate() {
        let s = mean_ci99(&[7.0]);
        assert_eq!((s.mean, s.ci99_low, s.ci99_high), (7.0, 7.0, 7.0));
    }

    #[test]
    fn two_point_sample_centered_on_half() {
        let s = mean_ci99(&[0.0, 1.0]);
        assert!((s.mean - 0.5).abs() < 1e-12);
        assert!(s.ci99_low < 0.0 && s.ci99_high > 1.0);
        assert!((s.mean - s.ci99_low - (s.ci99_high - s.mean)).abs() < 1e-12);
    }

    #[test]
    fn t_critical_values_match_tables() {
        // Two-sided 99% critical points: t(0.995; 9) and t(0.995; 99).
        let t9 = StudentsT::new(0.0, 1.0, 9.0).unwrap().inverse_cdf(0.995);
        let t99 = StudentsT::new(0.0, 1.0, 99.0).unwrap().inverse_cdf(0.995);
        assert!((t9 - 3.24984).abs() < 1e-4, "t9={t9}");
        assert!((t99 - 2.62641).abs() < 1e-4, "t99={t99}");
    }

    #[test]
    fn half_width_uses_t_times_standard_error() {
        let values = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0];
        let s = mean_ci99(&values);
        let se = (values.iter().map(|v| (v - 5.5).powi(2)).sum::<f64>() / 9.0 / 10.0).sqrt();
        let expect = 3.24984 * se;
        assert!((s.ci99_high - s.mean - expect).abs() < 1e-4);
    }

    #[test]
    fn coverage_of_true_mean_is_near_99_percent() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xDEAD);
        let normal = Normal::new(5.0, 2.0).unwrap();
        let mut covered = 0;
        let trials = 1000;
        for _ in 0..trials {
            let sample: Vec<f64> = (0..100).map(|_| normal.sample(&mut rng)).collect();
            let s = mean_ci99(&sample);
            if s.ci99_low <= 5.0 && 5.0 <= s.ci99_high {
                covered += 1;
            }
        }
        let coverage = covered as f64 / trials as f64;
        assert!((0.98..=0.997).contains(&coverage), "coverage={coverage}");
    }

    #[test]
    fn disjoint_interval_check() {
        let a = MetricSummary { mean: 1.0, ci99_low: 0.5, ci99_high: 1.5 };
        let b = MetricSummary { mean: 3.0, ci99_low: 2.0, ci99_high: 4.0 };
        let c = MetricSummary { mean: 1.4, ci99_low: 1.2, ci99_high: 1.6 };
        assert!(a.disjoint_from(&b));
        assert!(b.disjoint_from(&a));
        assert!(!a.disjoint_from(&c));
    }

    #[test]
    fn aggregate_requires_two_runs() {
        assert_eq!(aggregate(&[]).unwrap_err(), AggregateError::TooFewRuns(0));
    }

    #[test]
    fn random_sample_mean_matches_direct_computation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let values: Vec<f64> = (0..50).map(|_| rng.gen_range(0.0..10.0)).collect();
        let s = mean_ci99(&values);
        let direct = values.iter().sum::<f64>() / 50.0;
        assert!((s.mean - direct).abs() < 1e-12);
        assert!(s.ci99_low < s.mean && s.mean < s.ci99_high);
    }
}
