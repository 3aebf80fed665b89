//! Discrete-event fire simulation on small finite graphs.
//!
//! Every vacant vertex re-occupies after an Exp(1) wait. The instant the
//! origin becomes occupied, the whole occupied cluster containing it burns:
//! all member vertices turn vacant with fresh clocks. Burn events are the
//! only interaction, so the event queue holds exactly one pending arrival
//! per vacant vertex and none for occupied ones.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::rng::{exp1, RngHandle};

/// Event-queue stage tag, distinct from the chain sampler stages.
const STAGE_GRAPH: u64 = 1 << 62;

/// Finite graph with a designated ignition origin.
#[derive(Debug, Clone)]
pub struct GraphSpec {
    adj: Vec<Vec<u32>>,
    origin: u32,
}

impl GraphSpec {
    /// Validates symmetry, no self-loops, connectivity and origin range.
    pub fn new(adj: Vec<Vec<u32>>, origin: u32) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::Graph("empty vertex set".into()));
        }
        if origin as usize >= n {
            return Err(Error::Graph(format!("origin {origin} out of range 0..{n}")));
        }
        for (v, nbrs) in adj.iter().enumerate() {
            for &u in nbrs {
                if u as usize >= n {
                    return Err(Error::Graph(format!("edge {v}-{u} out of range")));
                }
                if u as usize == v {
                    return Err(Error::Graph(format!("self-loop at {v}")));
                }
                if !adj[u as usize].contains(&(v as u32)) {
                    return Err(Error::Graph(format!("edge {v}-{u} not symmetric")));
                }
            }
        }
        // connectivity by breadth-first search from the origin
        let mut seen = vec![false; n];
        let mut queue = vec![origin];
        seen[origin as usize] = true;
        let mut reached = 1usize;
        while let Some(v) = queue.pop() {
            for &u in &adj[v as usize] {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    reached += 1;
                    queue.push(u);
                }
            }
        }
        if reached != n {
            return Err(Error::Graph(format!(
                "graph not connected: reached {reached} of {n} vertices"
            )));
        }
        Ok(Self { adj, origin })
    }

    /// Path 0 - 1 - ... - len-1 with the origin at 0.
    pub fn path(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::Graph("path of length 0".into()));
        }
        let adj = (0..len)
            .map(|v| {
                let mut nbrs = Vec::with_capacity(2);
                if v > 0 {
                    nbrs.push((v - 1) as u32);
                }
                if v + 1 < len {
                    nbrs.push((v + 1) as u32);
                }
                nbrs
            })
            .collect();
        Self::new(adj, 0)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn origin(&self) -> u32 {
        self.origin
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }
}

/// Square torus; origin at (0, 0), vertex (x, y) has index x + y * width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus {
    pub width: usize,
    pub height: usize,
}

impl Torus {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width < 2 || height < 2 {
            return Err(Error::Graph(format!(
                "torus {width}x{height} too small, need both sides >= 2"
            )));
        }
        Ok(Self { width, height })
    }

    pub fn vertex_count(&self) -> usize {
        self.width * self.height
    }

    pub fn index(&self, x: usize, y: usize) -> u32 {
        (x % self.width + (y % self.height) * self.width) as u32
    }

    /// Wrapped 4-neighborhood, deduplicated on degenerate sides.
    pub fn graph(&self) -> GraphSpec {
        let (w, h) = (self.width, self.height);
        let adj = (0..w * h)
            .map(|i| {
                let (x, y) = (i % w, i / w);
                let mut nbrs = vec![
                    self.index((x + 1) % w, y),
                    self.index((x + w - 1) % w, y),
                    self.index(x, (y + 1) % h),
                    self.index(x, (y + h - 1) % h),
                ];
                nbrs.sort_unstable();
                nbrs.dedup();
                nbrs.retain(|&u| u != i as u32);
                nbrs
            })
            .collect();
        GraphSpec::new(adj, 0).expect("torus adjacency is symmetric and connected")
    }
}

/// Result of watching one vertex for its first burnout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FireOutcome {
    Burned { time: f64 },
    Censored { horizon: f64 },
}

impl FireOutcome {
    pub fn time(&self) -> Option<f64> {
        match self {
            FireOutcome::Burned { time } => Some(*time),
            FireOutcome::Censored { .. } => None,
        }
    }
}

#[derive(PartialEq)]
struct TimeKey(f64);

impl Eq for TimeKey {}

impl PartialOrd for TimeKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TimeKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

struct FireSim<'a> {
    g: &'a GraphSpec,
    occupied: Vec<bool>,
    heap: BinaryHeap<Reverse<(TimeKey, u32)>>,
    bfs: Vec<u32>,
}

impl<'a> FireSim<'a> {
    fn new(g: &'a GraphSpec, rng: &mut impl rand::Rng) -> Self {
        let n = g.vertex_count();
        let mut heap = BinaryHeap::with_capacity(n * 2);
        for v in 0..n as u32 {
            heap.push(Reverse((TimeKey(exp1(rng)), v)));
        }
        Self {
            g,
            occupied: vec![false; n],
            heap,
            bfs: Vec::with_capacity(n),
        }
    }

    /// Advances to the next burn event; returns (time, target burned).
    fn next_burn(&mut self, target: u32, rng: &mut impl rand::Rng) -> Option<(f64, bool)> {
        while let Some(Reverse((TimeKey(t), v))) = self.heap.pop() {
            debug_assert!(!self.occupied[v as usize]);
            self.occupied[v as usize] = true;
            if v != self.g.origin() {
                continue;
            }
            // burn the occupied cluster containing the origin
            let mut hit = false;
            self.bfs.clear();
            self.bfs.push(v);
            self.occupied[v as usize] = false;
            let mut head = 0;
            while head < self.bfs.len() {
                let w = self.bfs[head];
                head += 1;
                if w == target {
                    hit = true;
                }
                for &u in self.g.neighbors(w) {
                    if self.occupied[u as usize] {
                        self.occupied[u as usize] = false;
                        self.bfs.push(u);
                    }
                }
            }
            for &w in &self.bfs {
                self.heap.push(Reverse((TimeKey(t + exp1(rng)), w)));
            }
            return Some((t, hit));
        }
        None
    }
}

/// First burnout time of `target`, or a censoring marker at the horizon.
pub fn simulate_graph_fire(
    g: &GraphSpec,
    target: u32,
    horizon: f64,
    handle: &RngHandle,
) -> Result<FireOutcome> {
    if target as usize >= g.vertex_count() {
        return Err(Error::Graph(format!("target {target} out of range")));
    }
    if horizon <= 0.0 || horizon.is_nan() {
        return Err(Error::Param(format!(
            "horizon must be positive, got {horizon}"
        )));
    }
    let mut rng = handle.stage_rng(STAGE_GRAPH);
    let mut sim = FireSim::new(g, &mut rng);
    loop {
        match sim.next_burn(target, &mut rng) {
            Some((t, _)) if t > horizon => return Ok(FireOutcome::Censored { horizon }),
            Some((t, true)) => return Ok(FireOutcome::Burned { time: t }),
            Some((_, false)) => continue,
            None => return Ok(FireOutcome::Censored { horizon }),
        }
    }
}

/// First `count` burnout times of `target`, no horizon.
pub fn target_burnouts(
    g: &GraphSpec,
    target: u32,
    count: usize,
    handle: &RngHandle,
) -> Result<Vec<f64>> {
    if target as usize >= g.vertex_count() {
        return Err(Error::Graph(format!("target {target} out of range")));
    }
    if count == 0 {
        return Err(Error::EmptyRequest("target_burnouts with count = 0"));
    }
    let mut rng = handle.stage_rng(STAGE_GRAPH);
    let mut sim = FireSim::new(g, &mut rng);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        match sim.next_burn(target, &mut rng) {
            Some((t, true)) => out.push(t),
            Some((_, false)) => {}
            None => unreachable!("event queue never drains"),
        }
    }
    Ok(out)
}
