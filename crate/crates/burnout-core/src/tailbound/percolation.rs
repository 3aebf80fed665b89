//! Monte Carlo estimate of the percolation function theta(p) on a torus.
//!
//! theta(p) is the probability that the origin is occupied and lies in an
//! infinite cluster. On a finite torus the implemented proxy is: the origin
//! is occupied, its cluster is (one of) the largest, and that cluster wraps
//! the torus in at least one direction. This is a finite-size stand-in, not
//! the infinite-volume quantity: near criticality it reads high because
//! finite boxes smear the transition, while deep in the supercritical phase
//! the bias is negligible against the Monte Carlo error reported alongside.

use rand::Rng;

use crate::error::{Error, Result};
use crate::parallel::{map_replicas, Parallelism};
use crate::rng::RngHandle;
use crate::sim::Torus;

const STAGE_PERCOLATION: u64 = (1 << 62) + 1;

/// Union-find over torus sites carrying the displacement to the parent in
/// unwrapped coordinates; joining two already-connected sites with a
/// mismatched displacement certifies that the cluster winds the torus.
struct WindingForest {
    parent: Vec<u32>,
    rank: Vec<u8>,
    // displacement from site to its parent, in unwrapped lattice steps
    dx: Vec<i32>,
    dy: Vec<i32>,
    size: Vec<u32>,
    winds: Vec<bool>,
}

impl WindingForest {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            dx: vec![0; n],
            dy: vec![0; n],
            size: vec![1; n],
            winds: vec![false; n],
        }
    }

    /// Root of v; compresses the path and accumulates displacements.
    fn find(&mut self, v: u32) -> (u32, i32, i32) {
        let p = self.parent[v as usize];
        if p == v {
            return (v, 0, 0);
        }
        let (root, pdx, pdy) = self.find(p);
        let ndx = self.dx[v as usize] + pdx;
        let ndy = self.dy[v as usize] + pdy;
        self.parent[v as usize] = root;
        self.dx[v as usize] = ndx;
        self.dy[v as usize] = ndy;
        (root, ndx, ndy)
    }

    /// Join a and b where b sits at a + (sdx, sdy) in unwrapped coordinates.
    fn union(&mut self, a: u32, b: u32, sdx: i32, sdy: i32) {
        let (ra, adx, ady) = self.find(a);
        let (rb, bdx, bdy) = self.find(b);
        if ra == rb {
            // both displacements measure against the same root
            if adx + sdx != bdx || ady + sdy != bdy {
                self.winds[ra as usize] = true;
            }
            return;
        }
        // displacement of rb relative to ra if rb hangs under ra
        let rel_dx = adx + sdx - bdx;
        let rel_dy = ady + sdy - bdy;
        let (hi, lo, ldx, ldy) = if self.rank[ra as usize] >= self.rank[rb as usize] {
            (ra, rb, rel_dx, rel_dy)
        } else {
            (rb, ra, -rel_dx, -rel_dy)
        };
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
        self.parent[lo as usize] = hi;
        self.dx[lo as usize] = ldx;
        self.dy[lo as usize] = ldy;
        self.size[hi as usize] += self.size[lo as usize];
        self.winds[hi as usize] = self.winds[hi as usize] || self.winds[lo as usize];
    }
}

/// One replica: does the occupied origin sit in a largest, winding cluster?
fn origin_in_spanning_cluster(torus: &Torus, p: f64, rng: &mut impl Rng) -> bool {
    let (w, h) = (torus.width, torus.height);
    let n = w * h;
    let occupied: Vec<bool> = (0..n).map(|_| rng.random::<f64>() < p).collect();
    if !occupied[0] {
        return false;
    }
    let mut forest = WindingForest::new(n);
    for y in 0..h {
        for x in 0..w {
            let v = (x + y * w) as u32;
            if !occupied[v as usize] {
                continue;
            }
            let right = ((x + 1) % w + y * w) as u32;
            if occupied[right as usize] {
                forest.union(v, right, 1, 0);
            }
            let down = (x + ((y + 1) % h) * w) as u32;
            if occupied[down as usize] {
                forest.union(v, down, 0, 1);
            }
        }
    }
    let (root0, _, _) = forest.find(0);
    if !forest.winds[root0 as usize] {
        return false;
    }
    let origin_size = forest.size[root0 as usize];
    let max_size = (0..n as u32)
        .filter(|&v| occupied[v as usize] && forest.parent[v as usize] == v)
        .map(|v| forest.size[v as usize])
        .max()
        .unwrap_or(0);
    origin_size == max_size
}

/// Point estimate of theta(p) with its Monte Carlo standard error.
#[derive(Debug, Clone, Copy)]
pub struct ThetaEstimate {
    pub value: f64,
    pub std_error: f64,
    pub replicas: usize,
}

/// Monte Carlo theta(p) proxy on a torus; one uniform per site per replica,
/// so runs at different p couple monotonically under the same handle.
pub fn estimate_theta(
    torus: &Torus,
    p: f64,
    replicas: usize,
    handle: &RngHandle,
    mode: Parallelism,
) -> Result<ThetaEstimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Param(format!(
            "occupation probability {p} outside [0, 1]"
        )));
    }
    if replicas == 0 {
        return Err(Error::EmptyRequest("theta estimate with 0 replicas"));
    }
    let hits = map_replicas(mode, replicas, |r| {
        let mut rng = handle.replica(r as u64).stage_rng(STAGE_PERCOLATION);
        u64::from(origin_in_spanning_cluster(torus, p, &mut rng))
    })
    .into_iter()
    .sum::<u64>();
    let value = hits as f64 / replicas as f64;
    let std_error = (value * (1.0 - value) / replicas as f64).sqrt();
    Ok(ThetaEstimate {
        value,
        std_error,
        replicas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_occupation_always_spans() {
        let t = Torus::new(16, 16).unwrap();
        let est = estimate_theta(&t, 1.0, 64, &RngHandle::new(1, 0), Parallelism::Serial).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn deep_subcritical_is_near_zero() {
        let t = Torus::new(64, 64).unwrap();
        let est =
            estimate_theta(&t, 0.05, 400, &RngHandle::new(2, 0), Parallelism::Parallel).unwrap();
        assert!(est.value <= 0.01, "theta estimate {}", est.value);
    }

    #[test]
    fn monotone_in_p_with_coupled_seeds() {
        let t = Torus::new(48, 48).unwrap();
        let h = RngHandle::new(3, 0);
        let grid = [0.65, 0.75, 0.85];
        let est: Vec<ThetaEstimate> = grid
            .iter()
            .map(|&p| estimate_theta(&t, p, 600, &h, Parallelism::Parallel).unwrap())
            .collect();
        for w in est.windows(2) {
            let slack = 2.0 * (w[0].std_error + w[1].std_error);
            assert!(
                w[1].value >= w[0].value - slack,
                "{} then {}",
                w[0].value,
                w[1].value
            );
        }
    }

    #[test]
    fn guards() {
        let t = Torus::new(8, 8).unwrap();
        assert!(estimate_theta(&t, 1.5, 10, &RngHandle::new(0, 0), Parallelism::Serial).is_err());
        assert!(estimate_theta(&t, 0.5, 0, &RngHandle::new(0, 0), Parallelism::Serial).is_err());
    }

    #[test]
    fn winding_detection_on_a_ring() {
        // a fully occupied single row on a 4x4 torus winds horizontally
        let mut forest = WindingForest::new(16);
        for x in 0..4u32 {
            forest.union(x, (x + 1) % 4, 1, 0);
        }
        let (root, _, _) = forest.find(0);
        assert!(forest.winds[root as usize]);
        // a path that does not close up does not wind
        let mut open = WindingForest::new(16);
        open.union(0, 1, 1, 0);
        open.union(1, 2, 1, 0);
        let (root, _, _) = open.find(0);
        assert!(!open.winds[root as usize]);
    }
}
