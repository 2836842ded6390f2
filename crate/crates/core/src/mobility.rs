//! Node movement generators: random waypoint (RWP), reference-point group
//! mobility (RPGM), and nomadic community (NC).
//!
//! All three share one kinematic core, [`WaypointMover`]: pick a destination
//! in some domain, move toward it at a drawn speed, land exactly on it, pause,
//! repeat. RWP applies the mover to each node over the whole field. The group
//! models apply it to a per-group reference point; RPGM members sit at a
//! fresh uniform offset inside the group disc every step, while NC members
//! run their own mover inside the roaming disc around the reference point.

use std::ops::{Add, Mul, Sub};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).length()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// The rectangular simulation area, anchored at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Field {
    pub width: f64,
    pub height: f64,
}

impl Field {
    pub fn new(width: f64, height: f64) -> Self {
        assert!(width > 0.0 && height > 0.0, "field dimensions must be positive");
        Field { width, height }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        0.0 <= p.x && p.x <= self.width && 0.0 <= p.y && p.y <= self.height
    }

    pub fn clamp(&self, p: Vec2) -> Vec2 {
        Vec2::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.height))
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vec2 {
        Vec2::new(rng.gen_range(0.0..self.width), rng.gen_range(0.0..self.height))
    }
}

/// Uniform point in the disc of `radius` around the origin.
fn sample_disc(radius: f64, rng: &mut impl Rng) -> Vec2 {
    let r = radius * rng.gen_range(0.0f64..1.0).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Vec2::new(r * theta.cos(), r * theta.sin())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MobilityModel {
    Rwp,
    Rpgm,
    Nc,
}

impl MobilityModel {
    pub fn label(self) -> &'static str {
        match self {
            MobilityModel::Rwp => "rwp",
            MobilityModel::Rpgm => "rpgm",
            MobilityModel::Nc => "nc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "rwp" => Some(MobilityModel::Rwp),
            "rpgm" => Some(MobilityModel::Rpgm),
            "nc" => Some(MobilityModel::Nc),
            _ => None,
        }
    }

    pub fn is_group(self) -> bool {
        matches!(self, MobilityModel::Rpgm | MobilityModel::Nc)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MobilityError {
    #[error("speed bounds must satisfy 0 < speed_min <= speed_max")]
    BadSpeeds,
    #[error("pause_max must be nonnegative")]
    BadPause,
    #[error("group models need a positive group/roaming radius")]
    BadRadius,
    #[error("group size distribution needs positive mean and variance")]
    BadGroupSize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobilityConfig {
    pub model: MobilityModel,
    pub speed_min: f64,
    pub speed_max: f64,
    pub pause_max: f64,
    pub group_mean: f64,
    pub group_var: f64,
    pub group_radius: f64,
    pub roaming_radius: f64,
}

impl MobilityConfig {
    /// Defaults per model: speeds U(0.5, 1.5) m/s, pauses up to 60 s (900 s
    /// for NC reference points), group sizes N(4, 4), 5 m group disc, 25 m
    /// roaming disc.
    pub fn for_model(model: MobilityModel) -> Self {
        MobilityConfig {
            model,
            speed_min: 0.5,
            speed_max: 1.5,
            pause_max: if model == MobilityModel::Nc { 900.0 } else { 60.0 },
            group_mean: 4.0,
            group_var: 4.0,
            group_radius: 5.0,
            roaming_radius: 25.0,
        }
    }

    pub fn rwp() -> Self {
        Self::for_model(MobilityModel::Rwp)
    }

    pub fn rpgm() -> Self {
        Self::for_model(MobilityModel::Rpgm)
    }

    pub fn nc() -> Self {
        Self::for_model(MobilityModel::Nc)
    }

    pub fn validate(&self) -> Result<(), MobilityError> {
        if !(self.speed_min > 0.0 && self.speed_min <= self.speed_max) {
            return Err(MobilityError::BadSpeeds);
        }
        if self.pause_max < 0.0 {
            return Err(MobilityError::BadPause);
        }
        if self.model.is_group() {
            if self.group_mean <= 0.0 || self.group_var <= 0.0 {
                return Err(MobilityError::BadGroupSize);
            }
            let radius = match self.model {
                MobilityModel::Rpgm => self.group_radius,
                _ => self.roaming_radius,
            };
            if radius <= 0.0 {
                return Err(MobilityError::BadRadius);
            }
        }
        Ok(())
    }
}

/// Where a mover draws its destinations from.
#[derive(Clone, Copy, Debug)]
enum Domain {
    Rect(Field),
    Disc { radius: f64 },
}

impl Domain {
    fn sample(&self, rng: &mut impl Rng) -> Vec2 {
        match *self {
            Domain::Rect(field) => field.sample(rng),
            Domain::Disc { radius } => sample_disc(radius, rng),
        }
    }
}

/// Waypoint kinematics for one point: move toward `dest` at `speed`, land
/// exactly on it, pause for a drawn duration, redraw destination and speed.
/// A zero pause redraws immediately; a pause that expires retargets so that
/// movement resumes on the following step.
#[derive(Clone, Debug)]
struct WaypointMover {
    pos: Vec2,
    dest: Vec2,
    speed: f64,
    pause_left: f64,
}

impl WaypointMover {
    fn new(pos: Vec2, domain: Domain, cfg: &MobilityConfig, rng: &mut impl Rng) -> Self {
        let mut mover = WaypointMover {
            pos,
            dest: pos,
            speed: 0.0,
            pause_left: 0.0,
        };
        mover.retarget(domain, cfg, rng);
        mover
    }

    fn retarget(&mut self, domain: Domain, cfg: &MobilityConfig, rng: &mut impl Rng) {
        self.dest = domain.sample(rng);
        self.speed = rng.gen_range(cfg.speed_min..=cfg.speed_max);
    }

    fn advance(
        &mut self,
        dt: f64,
        domain: Domain,
        cfg: &MobilityConfig,
        pause_max: f64,
        rng: &mut impl Rng,
    ) {
        if self.pause_left > 0.0 {
            self.pause_left -= dt;
            if self.pause_left <= 0.0 {
                self.pause_left = 0.0;
                self.retarget(domain, cfg, rng);
            }
            return;
        }
        let to = self.dest - self.pos;
        let dist = to.length();
        let step = self.speed * dt;
        if dist <= step {
            self.pos = self.dest;
            let pause = if pause_max > 0.0 {
                rng.gen_range(0.0..pause_max)
            } else {
                0.0
            };
            if pause > 0.0 {
                self.pause_left = pause;
            } else {
                self.retarget(domain, cfg, rng);
            }
        } else {
            self.pos = self.pos + to * (step / dist);
        }
    }
}

#[derive(Clone, Debug)]
enum Motion {
    Rwp(WaypointMover),
    Rpgm { group: usize },
    /// Local mover in offset coordinates relative to the reference point.
    Nc { group: usize, local: WaypointMover },
}

/// Position plus per-model motion state for one node.
#[derive(Clone, Debug)]
pub struct NodeMotionState {
    pub position: Vec2,
    motion: Motion,
}

impl NodeMotionState {
    pub fn group(&self) -> Option<usize> {
        match &self.motion {
            Motion::Rwp(_) => None,
            Motion::Rpgm { group } => Some(*group),
            Motion::Nc { group, .. } => Some(*group),
        }
    }
}

/// All node states plus the reference-point movers of the group models.
#[derive(Clone, Debug)]
pub struct Population {
    nodes: Vec<NodeMotionState>,
    references: Vec<WaypointMover>,
}

impl Population {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn position(&self, node: usize) -> Vec2 {
        self.nodes[node].position
    }

    pub fn positions(&self) -> Vec<Vec2> {
        self.nodes.iter().map(|n| n.position).collect()
    }

    pub fn nodes(&self) -> &[NodeMotionState] {
        &self.nodes
    }

    pub fn group_count(&self) -> usize {
        self.references.len()
    }

    pub fn reference_position(&self, group: usize) -> Option<Vec2> {
        self.references.get(group).map(|m| m.pos)
    }
}

/// Group size: round of N(mean, var), clamped to at least one member.
fn sample_group_size(cfg: &MobilityConfig, rng: &mut impl Rng) -> usize {
    let normal = Normal::new(cfg.group_mean, cfg.group_var.sqrt()).expect("validated");
    normal.sample(rng).round().max(1.0) as usize
}

pub fn init_population(
    n: usize,
    cfg: &MobilityConfig,
    field: &Field,
    rng: &mut impl Rng,
) -> Population {
    assert!(n >= 1, "population needs at least one node");
    cfg.validate().expect("invalid mobility config");
    let mut nodes = Vec::with_capacity(n);
    let mut references = Vec::new();
    match cfg.model {
        MobilityModel::Rwp => {
            for _ in 0..n {
                let pos = field.sample(rng);
                nodes.push(NodeMotionState {
                    position: pos,
                    motion: Motion::Rwp(WaypointMover::new(pos, Domain::Rect(*field), cfg, rng)),
                });
            }
        }
        MobilityModel::Rpgm | MobilityModel::Nc => {
            while nodes.len() < n {
                let size = sample_group_size(cfg, rng).min(n - nodes.len());
                let group = references.len();
                let ref_pos = field.sample(rng);
                references.push(WaypointMover::new(ref_pos, Domain::Rect(*field), cfg, rng));
                for _ in 0..size {
                    let state = match cfg.model {
                        MobilityModel::Rpgm => {
                            let offset = sample_disc(cfg.group_radius, rng);
                            NodeMotionState {
                                position: field.clamp(ref_pos + offset),
                                motion: Motion::Rpgm { group },
                            }
                        }
                        _ => {
                            let disc = Domain::Disc {
                                radius: cfg.roaming_radius,
                            };
                            let offset = sample_disc(cfg.roaming_radius, rng);
                            let local = WaypointMover::new(offset, disc, cfg, rng);
                            NodeMotionState {
                                position: field.clamp(ref_pos + offset),
                                motion: Motion::Nc { group, local },
                            }
                        }
                    };
                    nodes.push(state);
                }
            }
        }
    }
    Population { nodes, references }
}

pub fn step(
    pop: &mut Population,
    cfg: &MobilityConfig,
    field: &Field,
    dt: f64,
    rng: &mut impl Rng,
) {
    assert!(dt > 0.0, "time step must be positive");
    let rect = Domain::Rect(*field);
    for reference in &mut pop.references {
        reference.advance(dt, rect, cfg, cfg.pause_max, rng);
    }
    for node in &mut pop.nodes {
        match &mut node.motion {
            Motion::Rwp(mover) => {
                mover.advance(dt, rect, cfg, cfg.pause_max, rng);
                node.position = mover.pos;
            }
            Motion::Rpgm { group } => {
                let offset = sample_disc(cfg.group_radius, rng);
                node.position = field.clamp(pop.references[*group].pos + offset);
            }
            Motion::Nc { group, local } => {
                let disc = Domain::Disc {
                    radius: cfg.roaming_radius,
                };
                local.advance(dt, disc, cfg, 0.0, rng);
                node.position = field.clamp(pop.references[*group].pos + local.pos);
            }
        }
    }
}
