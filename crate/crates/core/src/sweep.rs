//! Deterministic parameter sweeps over mobility model, hop limit and
//! malicious ratio.
//!
//! Every run's seed is derived from the master seed and the run's position in
//! the grid, so results are independent of execution order and of how many
//! worker threads process the grid.

use crate::crypto::hash;
use crate::engine::{run_scenario, ConfigError, ScenarioConfig, ScenarioResult};
use crate::mobility::{MobilityConfig, MobilityModel};
use crate::stats::{aggregate, AggregateError, AggregateSummary};

/// A sweep grid: the cartesian product model × hop_limit × malicious_ratio,
/// each cell repeated `repetitions` times with derived seeds.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: ScenarioConfig,
    pub models: Vec<MobilityConfig>,
    pub hop_limits: Vec<usize>,
    pub malicious_ratios: Vec<f64>,
    pub repetitions: usize,
    pub master_seed: u64,
}

impl SweepSpec {
    /// One cell per model with the base hop limit and malicious ratio.
    pub fn single_cell(base: ScenarioConfig, repetitions: usize, master_seed: u64) -> Self {
        SweepSpec {
            models: vec![base.mobility],
            hop_limits: vec![base.hop_limit],
            malicious_ratios: vec![base.malicious_ratio],
            repetitions,
            master_seed,
            base,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.models.is_empty()
            || self.hop_limits.is_empty()
            || self.malicious_ratios.is_empty()
            || self.repetitions == 0
        {
            return Err(ConfigError::EmptySweepAxis);
        }
        for cell in self.cells() {
            self.config_for(&cell, 0).validate()?;
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.models.len() * self.hop_limits.len() * self.malicious_ratios.len()
    }

    pub fn run_count(&self) -> usize {
        self.cell_count() * self.repetitions
    }

    /// Cells in grid order: models outermost, then hop limits, then ratios.
    pub fn cells(&self) -> Vec<CellKey> {
        let mut out = Vec::with_capacity(self.cell_count());
        let mut index = 0;
        for mobility in &self.models {
            for &hop_limit in &self.hop_limits {
                for &malicious_ratio in &self.malicious_ratios {
                    out.push(CellKey {
                        index,
                        mobility: *mobility,
                        hop_limit,
                        malicious_ratio,
                    });
                    index += 1;
                }
            }
        }
        out
    }

    fn config_for(&self, cell: &CellKey, repetition: usize) -> ScenarioConfig {
        ScenarioConfig {
            mobility: cell.mobility,
            hop_limit: cell.hop_limit,
            malicious_ratio: cell.malicious_ratio,
            seed: derive_run_seed(self.master_seed, cell.index as u64, repetition as u64),
            ..self.base
        }
    }
}

/// Position and parameters of a cell in the sweep grid.
#[derive(Debug, Clone, Copy)]
pub struct CellKey {
    pub index: usize,
    pub mobility: MobilityConfig,
    pub hop_limit: usize,
    pub malicious_ratio: f64,
}

/// The outcome of a single run, tagged with its cell coordinates.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub model: MobilityModel,
    pub hop_limit: usize,
    pub malicious_ratio: f64,
    pub repetition: usize,
    pub seed: u64,
    pub result: ScenarioResult,
}

/// Aggregated metrics for one cell.
#[derive(Debug, Clone)]
pub struct CellSummary {
    pub model: MobilityModel,
    pub hop_limit: usize,
    pub malicious_ratio: f64,
    pub summary: AggregateSummary,
}

/// Seed for (cell, repetition): the first eight bytes of
/// h(master || cell || repetition), all encoded big-endian.
pub fn derive_run_seed(master_seed: u64, cell: u64, repetition: u64) -> u64 {
    let mut buf = [0u8; 24];
    buf[..8].copy_from_slice(&master_seed.to_be_bytes());
    buf[8..16].copy_from_slice(&cell.to_be_bytes());
    buf[16..].copy_from_slice(&repetition.to_be_bytes());
    let digest = hash(&buf);
    u64::from_be_bytes(digest.as_bytes()[..8].try_into().expect("digest is 32 octets"))
}

/// Runs the whole grid and returns records in grid order (cell-major,
/// repetitions within a cell in order).
///
/// `parallelism` picks the worker thread count; 0 lets the runtime decide.
/// Without the `parallel` feature the grid always runs sequentially and
/// `parallelism` is ignored. Either way, the output is identical for a given
/// master seed.
pub fn run_sweep(spec: &SweepSpec, parallelism: usize) -> Result<Vec<RunRecord>, ConfigError> {
    spec.validate()?;
    let tasks: Vec<(CellKey, usize)> = spec
        .cells()
        .into_iter()
        .flat_map(|cell| (0..spec.repetitions).map(move |rep| (cell, rep)))
        .collect();
    let results = run_tasks(spec, &tasks, parallelism)?;
    Ok(tasks
        .into_iter()
        .zip(results)
        .map(|((cell, repetition), result)| RunRecord {
            model: cell.mobility.model,
            hop_limit: cell.hop_limit,
            malicious_ratio: cell.malicious_ratio,
            repetition,
            seed: derive_run_seed(spec.master_seed, cell.index as u64, repetition as u64),
            result,
        })
        .collect())
}

#[cfg(feature = "parallel")]
fn run_tasks(
    spec: &SweepSpec,
    tasks: &[(CellKey, usize)],
    parallelism: usize,
) -> Result<Vec<ScenarioResult>, ConfigError> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .expect("rayon pool");
    pool.install(|| {
        tasks
            .par_iter()
            .map(|(cell, rep)| run_scenario(&spec.config_for(cell, *rep)))
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_tasks(
    spec: &SweepSpec,
    tasks: &[(CellKey, usize)],
    _parallelism: usize,
) -> Result<Vec<ScenarioResult>, ConfigError> {
    tasks
        .iter()
        .map(|(cell, rep)| run_scenario(&spec.config_for(cell, *rep)))
        .collect()
}

/// Groups records by cell (in first-seen order) and aggregates each group.
pub fn summarize(records: &[RunRecord]) -> Result<Vec<CellSummary>, AggregateError> {
    let mut order: Vec<(MobilityModel, usize, u64)> = Vec::new();
    let mut groups: Vec<Vec<&ScenarioResult>> = Vec::new();
    for rec in records {
        let key = (rec.model, rec.hop_limit, rec.malicious_ratio.to_bits());
        match order.iter().position(|k| *k == key) {
            Some(i) => groups[i].push(&rec.result),
            None => {
                order.push(key);
                groups.push(vec![&rec.result]);
            }
        }
    }
    order
        .into_iter()
        .zip(groups)
        .map(|((model, hop_limit, ratio_bits), group)| {
            let results: Vec<ScenarioResult> = group.into_iter().cloned().collect();
            Ok(CellSummary {
                model,
                hop_limit,
                malicious_ratio: f64::from_bits(ratio_bits),
                summary: aggregate(&results)?,
            })
        })
        .collect()
}
