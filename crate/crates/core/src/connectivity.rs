//! Radio link abstraction and k-hop neighborhood computation.
//!
//! Two link models: a deterministic unit disk (default, zero-shadowing range
//! 100 m) and log-distance path loss with log-normal shadowing, one fresh
//! shadowing draw per unordered pair and evaluation instant. Graphs over a
//! position snapshot are built with a uniform spatial hash whose cell size is
//! the largest distance any link can span, so only neighboring cells are
//! tested.

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::mobility::{Field, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadioMode {
    Disk,
    Lognormal,
}

impl RadioMode {
    pub fn label(self) -> &'static str {
        match self {
            RadioMode::Disk => "disk",
            RadioMode::Lognormal => "lognormal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "disk" => Some(RadioMode::Disk),
            "lognormal" => Some(RadioMode::Lognormal),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RadioError {
    #[error("disk range must be positive")]
    BadRange,
    #[error("path loss exponent must be positive")]
    BadExponent,
    #[error("shadowing sigma must be nonnegative")]
    BadSigma,
}

/// Radio parameters. The defaults pair 17 dBm transmit power with a
/// sensitivity chosen so the zero-shadowing log-distance range is exactly
/// 100 m, matching the disk-mode default range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadioConfig {
    pub mode: RadioMode,
    pub range: f64,
    pub tx_power: f64,
    pub path_loss_exponent: f64,
    pub shadowing_sigma: f64,
    pub sensitivity: f64,
    pub reference_loss_db: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        RadioConfig {
            mode: RadioMode::Disk,
            range: 100.0,
            tx_power: 17.0,
            path_loss_exponent: 3.0,
            shadowing_sigma: 9.5,
            sensitivity: -83.05,
            reference_loss_db: 40.05,
        }
    }
}

impl RadioConfig {
    pub fn lognormal() -> Self {
        RadioConfig {
            mode: RadioMode::Lognormal,
            ..RadioConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), RadioError> {
        if self.range <= 0.0 {
            return Err(RadioError::BadRange);
        }
        if self.path_loss_exponent <= 0.0 {
            return Err(RadioError::BadExponent);
        }
        if self.shadowing_sigma < 0.0 {
            return Err(RadioError::BadSigma);
        }
        Ok(())
    }
}

/// Deterministic part of the log-distance model, in dB.
pub fn path_loss_db(d: f64, cfg: &RadioConfig) -> f64 {
    assert!(d > 0.0, "path loss is defined for positive distances");
    cfg.reference_loss_db + 10.0 * cfg.path_loss_exponent * d.log10()
}

/// Longest distance any link can span under `cfg`. In lognormal mode the
/// shadowing draw is treated as bounded by +4 sigma, beyond which a link is
/// written off.
pub fn max_link_distance(cfg: &RadioConfig) -> f64 {
    match cfg.mode {
        RadioMode::Disk => cfg.range,
        RadioMode::Lognormal => {
            let budget = cfg.tx_power - cfg.sensitivity + 4.0 * cfg.shadowing_sigma
                - cfg.reference_loss_db;
            10f64.powf(budget / (10.0 * cfg.path_loss_exponent))
        }
    }
}

/// Whether a and b hear each other at this instant. Lognormal mode draws one
/// shared shadowing value for the pair, keeping the relation symmetric.
pub fn link_up(a: Vec2, b: Vec2, cfg: &RadioConfig, rng: &mut impl Rng) -> bool {
    let d = a.distance(b);
    match cfg.mode {
        RadioMode::Disk => d <= cfg.range,
        RadioMode::Lognormal => {
            if d == 0.0 {
                return true;
            }
            let z: f64 = rng.sample(StandardNormal);
            let shadow = z * cfg.shadowing_sigma;
            cfg.tx_power - path_loss_db(d, cfg) - shadow >= cfg.sensitivity
        }
    }
}

/// Uniform spatial hash over a position snapshot. Any two points further
/// apart than the cell size live in non-adjacent cells, so a 3x3 cell
/// neighborhood contains every candidate partner.
pub struct SpatialGrid {
    cell: f64,
    cols: usize,
    rows: usize,
    bins: Vec<Vec<u32>>,
}

impl SpatialGrid {
    pub fn build(positions: &[Vec2], field: &Field, cell: f64) -> Self {
        assert!(cell > 0.0);
        let cols = (field.width / cell).ceil().max(1.0) as usize;
        let rows = (field.height / cell).ceil().max(1.0) as usize;
        let mut grid = SpatialGrid {
            cell,
            cols,
            rows,
            bins: vec![Vec::new(); cols * rows],
        };
        grid.rebuild(positions);
        grid
    }

    /// Refills the bins from a new snapshot, reusing allocations.
    pub fn rebuild(&mut self, positions: &[Vec2]) {
        for bin in &mut self.bins {
            bin.clear();
        }
        for (i, p) in positions.iter().enumerate() {
            let (cx, cy) = self.cell_of(*p);
            self.bins[cy * self.cols + cx].push(i as u32);
        }
    }

    fn cell_of(&self, p: Vec2) -> (usize, usize) {
        let cx = ((p.x / self.cell) as usize).min(self.cols - 1);
        let cy = ((p.y / self.cell) as usize).min(self.rows - 1);
        (cx, cy)
    }

    /// Indices stored in the 3x3 cell block around `p`, in row-major cell
    /// order (deterministic).
    pub fn neighborhood(&self, p: Vec2) -> impl Iterator<Item = u32> + '_ {
        let (cx, cy) = self.cell_of(p);
        let x0 = cx.saturating_sub(1);
        let y0 = cy.saturating_sub(1);
        let x1 = (cx + 1).min(self.cols - 1);
        let y1 = (cy + 1).min(self.rows - 1);
        (y0..=y1).flat_map(move |y| {
            (x0..=x1).flat_map(move |x| self.bins[y * self.cols + x].iter().copied())
        })
    }
}

/// Symmetric, irreflexive adjacency over node indices at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityGraph {
    adj: Vec<Vec<u32>>,
}

impl ConnectivityGraph {
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.adj[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }
}

/// Evaluates link_up over all candidate pairs (each unordered pair once) and
/// returns the adjacency with sorted neighbor lists.
pub fn build_graph(positions: &[Vec2], field: &Field, cfg: &RadioConfig, rng: &mut impl Rng) -> ConnectivityGraph {
    let mut adj = vec![Vec::new(); positions.len()];
    if positions.is_empty() {
        return ConnectivityGraph { adj };
    }
    let grid = SpatialGrid::build(positions, field, max_link_distance(cfg));
    for (i, p) in positions.iter().enumerate() {
        for j in grid.neighborhood(*p) {
            let j = j as usize;
            if j <= i {
                continue;
            }
            if link_up(*p, positions[j], cfg, rng) {
                adj[i].push(j as u32);
                adj[j].push(i as u32);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    ConnectivityGraph { adj }
}

/// Nodes reachable from `start` within k edges, excluding `start`, sorted.
pub fn k_hop_neighbors(graph: &ConnectivityGraph, start: usize, k: usize) -> Vec<u32> {
    assert!(k >= 1, "hop limit must be at least 1");
    let mut visited = vec![false; graph.len()];
    visited[start] = true;
    let mut frontier = vec![start as u32];
    let mut out = Vec::new();
    for _ in 0..k {
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in graph.neighbors(u as usize) {
                if !visited[v as usize] {
                    visited[v as usize] = true;
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend_from_slice(&next);
        frontier = next;
    }
    out.sort_unstable();
    out
}

/// k-hop BFS that discovers links lazily from a grid snapshot instead of a
/// prebuilt graph. Each unordered pair is link-tested at most once, so
/// lognormal shadowing is still drawn once per pair and instant.
pub fn k_hop_from_grid(
    positions: &[Vec2],
    grid: &SpatialGrid,
    start: usize,
    k: usize,
    cfg: &RadioConfig,
    rng: &mut impl Rng,
) -> Vec<u32> {
    assert!(k >= 1, "hop limit must be at least 1");
    let mut visited = vec![false; positions.len()];
    visited[start] = true;
    let mut frontier = vec![start as u32];
    let mut out = Vec::new();
    for _ in 0..k {
        let mut next = Vec::new();
        for &u in &frontier {
            let up = positions[u as usize];
            for v in grid.neighborhood(up) {
                if visited[v as usize] {
                    continue;
                }
                if link_up(up, positions[v as usize], cfg, rng) {
                    visited[v as usize] = true;
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend_from_slice(&next);
        frontier = next;
    }
    out.sort_unstable();
    out
}
