//! Monte Carlo samplers for the forest-fire process on the half line.
//!
//! Site 0 burns at the arrivals of a unit-rate Poisson process. Site n+1
//! burns exactly at those burnouts of site n at which it is occupied, and it
//! re-occupies an Exp(1) time after each of its own burnouts. That coupling
//! makes the burnout times of site n+1 a subsequence of the times of site n
//! and drives the streaming sampler below: no lattice state is ever held,
//! one replica is one chain of filtered streams.

mod graph;

pub use graph::{simulate_graph_fire, target_burnouts, FireOutcome, GraphSpec, Torus};

use crate::error::{Error, Result};
use crate::parallel::{map_replicas, Parallelism};
use crate::rng::{exp1, RngHandle};

/// Default guard on (sites crossed) x (samples requested) for one chain.
pub const DEFAULT_TAU_BUDGET: u64 = 8_000_000_000;

/// Ordered burnout times observed at one site.
#[derive(Debug, Clone, PartialEq)]
pub struct BurnStream {
    site: usize,
    times: Vec<f64>,
}

impl BurnStream {
    fn new(site: usize, times: Vec<f64>) -> Self {
        debug_assert!(times.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(times.first().map(|&t| t > 0.0).unwrap_or(true));
        Self { site, times }
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Inter-burnout gaps. The process starts from the all-vacant state, so
    /// the first gap is measured from time zero and the gaps are i.i.d. from
    /// the start.
    pub fn gaps(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.times
            .iter()
            .map(|&t| {
                let g = t - prev;
                prev = t;
                g
            })
            .collect()
    }
}

/// Burnout times at site 0: cumulative sums of `count` unit exponentials.
pub fn sample_site0(count: usize, handle: &RngHandle) -> Result<BurnStream> {
    if count == 0 {
        return Err(Error::EmptyRequest("sample_site0 with count = 0"));
    }
    let mut rng = handle.stage_rng(0);
    let mut draw = move || exp1(&mut rng);
    Ok(BurnStream::new(0, site0_times(count, &mut draw)))
}

fn site0_times(count: usize, draw: &mut impl FnMut() -> f64) -> Vec<f64> {
    let mut t = 0.0;
    (0..count)
        .map(|_| {
            t += draw();
            t
        })
        .collect()
}

/// Exact one-site coupling step.
///
/// After each burnout of the child site at t0 (initially t0 = 0) the site
/// re-occupies at t0 + Exp(1); its next burnout is the first parent burnout
/// at or after that arrival. Output ends when the parent stream is exhausted,
/// so every emitted time is bit-identical to a parent time.
pub fn propagate(parent: &BurnStream, handle: &RngHandle) -> Result<BurnStream> {
    if parent.is_empty() {
        return Err(Error::EmptyRequest("propagate from an empty parent stream"));
    }
    let site = parent.site() + 1;
    let mut rng = handle.stage_rng(site as u64);
    let mut draw = move || exp1(&mut rng);
    Ok(BurnStream::new(
        site,
        propagate_times(parent.times(), &mut draw),
    ))
}

fn propagate_times(parent: &[f64], draw: &mut impl FnMut() -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut i = 0usize;
    let mut t0 = 0.0_f64;
    loop {
        let arrival = t0 + draw();
        while i < parent.len() && parent[i] < arrival {
            i += 1;
        }
        if i == parent.len() {
            break;
        }
        t0 = parent[i];
        out.push(t0);
        i += 1;
    }
    out
}

/// First `samples` inter-burnout gaps at site `n`, one sequential chain.
pub fn sample_tau(n: usize, samples: usize, handle: &RngHandle) -> Result<Vec<f64>> {
    sample_tau_with_budget(n, samples, handle, DEFAULT_TAU_BUDGET)
}

/// As [`sample_tau`] with an explicit resource budget on n x samples.
pub fn sample_tau_with_budget(
    n: usize,
    samples: usize,
    handle: &RngHandle,
    budget: u64,
) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::EmptyRequest("sample_tau with samples = 0"));
    }
    let load = (n as u64 + 1).saturating_mul(samples as u64);
    if load > budget {
        return Err(Error::Budget(format!(
            "sample_tau needs (n+1) * samples = {load} site visits, budget is {budget}"
        )));
    }
    // The mean gap at site n grows like e^gamma log n, so no site-0 count is
    // right a priori; start from that estimate and double until the chain
    // yields enough gaps. Reruns reproduce prefixes exactly because every
    // stage owns its (seed, stream, stage) generator.
    let mean_gap = if n < 2 {
        (n + 1) as f64
    } else {
        crate::constants::exp_gamma() * (n as f64).ln()
    };
    let mut count0 = ((samples as f64) * (mean_gap + 4.0) * 1.25).ceil() as usize;
    for _ in 0..32 {
        let mut stream = sample_site0(count0, handle)?;
        for _ in 0..n {
            stream = propagate(&stream, handle)?;
            if stream.is_empty() {
                break;
            }
        }
        if stream.site() == n && stream.len() >= samples {
            let mut gaps = stream.gaps();
            gaps.truncate(samples);
            return Ok(gaps);
        }
        count0 = count0.saturating_mul(2);
    }
    Err(Error::Budget(format!(
        "sample_tau(n = {n}, samples = {samples}) did not converge while doubling site-0 events"
    )))
}

/// Gaps at site `n` gathered from independent replica chains.
///
/// The sample count is split evenly over `streams` replicas; output order is
/// replica order, so the result does not depend on worker count.
pub fn sample_tau_replicated(
    n: usize,
    samples: usize,
    handle: &RngHandle,
    streams: usize,
    mode: Parallelism,
) -> Result<Vec<f64>> {
    if streams == 0 {
        return Err(Error::EmptyRequest("sample_tau_replicated with 0 streams"));
    }
    let streams = streams.min(samples.max(1));
    let base = samples / streams;
    let extra = samples % streams;
    let chunks: Vec<Result<Vec<f64>>> = map_replicas(mode, streams, |r| {
        let want = base + usize::from(r < extra);
        if want == 0 {
            return Ok(Vec::new());
        }
        sample_tau(n, want, &handle.replica(r as u64))
    });
    let mut out = Vec::with_capacity(samples);
    for chunk in chunks {
        out.extend(chunk?);
    }
    Ok(out)
}
