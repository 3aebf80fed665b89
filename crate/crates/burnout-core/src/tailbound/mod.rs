//! Exponential tail bound for the first burnout time of a fixed vertex on a
//! transitive graph.
//!
//! With occupation level p in (p_c, 1), S = -log(1 - p) and
//! gamma = 1 - theta(p)^2 / p, the renewal cycles of origin-ignition windows
//! of length at least S have MGF phi(t) = 1 / (1 - t e^{S(1 - t)}), and the
//! survival of the first burnout time obeys
//! P(eta > x) <= gamma^{-1} [x (1 - p) + 1] e^{-lambda x}
//! where lambda is the smallest positive root of phi(lambda) = 1/gamma.

mod lambertw;
mod percolation;

pub use lambertw::lambert_w0;
pub use percolation::{estimate_theta, ThetaEstimate};

use crate::error::{Error, Result};

/// Residual demanded of the lambda solver, |gamma * phi(lambda) - 1|.
pub const LAMBDA_RESIDUAL: f64 = 1e-12;

/// Renewal-cycle MGF phi(t) = 1 / (1 - t e^{S(1-t)}), finite on [0, t_max).
pub fn phi_nu(t: f64, s: f64) -> Result<f64> {
    if s <= 0.0 || s.is_nan() {
        return Err(Error::Param(format!(
            "rate parameter S must be positive, got {s}"
        )));
    }
    let tm = t_max(s)?;
    if !(0.0..).contains(&t) || t >= tm {
        return Err(Error::Domain(format!(
            "phi defined on [0, t_max = {tm}), got t = {t}"
        )));
    }
    Ok(1.0 / (1.0 - cycle_gain(t, s)))
}

/// t e^{S(1 - t)}, the quantity whose first crossing of 1 is the MGF pole.
fn cycle_gain(t: f64, s: f64) -> f64 {
    t * (s * (1.0 - t)).exp()
}

/// Pole of phi: 1 for S <= 1, else -W0(-S e^-S) / S.
pub fn t_max(s: f64) -> Result<f64> {
    if s <= 0.0 || s.is_nan() {
        return Err(Error::Param(format!(
            "rate parameter S must be positive, got {s}"
        )));
    }
    if s <= 1.0 {
        return Ok(1.0);
    }
    Ok(-lambert_w0(-s * (-s).exp())? / s)
}

/// Smallest positive root of phi(lambda) = 1/gamma, gamma in (0, 1).
///
/// Solved as cycle_gain(lambda) = 1 - gamma, which is increasing on
/// (0, t_max): bracketed bisection first, then a short Newton polish.
/// Unbracketed Newton is never used because of the pole at t_max.
pub fn solve_lambda(gamma: f64, s: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!(
            "gamma must lie in (0, 1), got {gamma}"
        )));
    }
    let tm = t_max(s)?;
    let target = 1.0 - gamma;
    let (mut lo, mut hi) = (0.0_f64, tm * (1.0 - 1e-12));
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if cycle_gain(mid, s) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..4 {
        let g = cycle_gain(lambda, s);
        let dg = (s * (1.0 - lambda)).exp() * (1.0 - lambda * s);
        if dg <= 0.0 {
            break;
        }
        let next = lambda - (g - target) / dg;
        if next > lo && next < hi {
            lambda = next;
        }
    }
    let residual = (gamma * 1.0 / (1.0 - cycle_gain(lambda, s)) - 1.0).abs();
    if residual > LAMBDA_RESIDUAL {
        return Err(Error::Solver(format!(
            "lambda solve residual {residual} at gamma = {gamma}, S = {s}"
        )));
    }
    Ok(lambda)
}

/// Inputs and solved quantities of the tail bound.
#[derive(Debug, Clone, Copy)]
pub struct TailBoundParams {
    pub p: f64,
    pub s: f64,
    pub theta: f64,
    pub gamma: f64,
    pub t_max: f64,
    pub lambda: f64,
}

impl TailBoundParams {
    /// Builds the bound parameters from (p, theta).
    ///
    /// theta <= p always holds for the true percolation function (the origin
    /// must itself be occupied), which keeps gamma = 1 - theta^2/p inside
    /// (0, 1); estimates violating it are rejected.
    pub fn from_p_theta(p: f64, theta: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Param(format!("p must lie in (0, 1), got {p}")));
        }
        if theta <= 0.0 || theta.is_nan() || theta > 1.0 {
            return Err(Error::Param(format!(
                "theta must lie in (0, 1], got {theta}"
            )));
        }
        let gamma = 1.0 - theta * theta / p;
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::Param(format!(
                "gamma = 1 - theta^2/p = {gamma} outside (0, 1); theta^2 must stay below p"
            )));
        }
        let s = -(-p).ln_1p(); // -log(1 - p)
        let t_max = t_max(s)?;
        let lambda = solve_lambda(gamma, s)?;
        Ok(Self {
            p,
            s,
            theta,
            gamma,
            t_max,
            lambda,
        })
    }

    /// Same bound driven by a direct gamma value; theta is backed out of
    /// gamma = 1 - theta^2 / p.
    pub fn from_p_gamma(p: f64, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::Param(format!(
                "gamma must lie in (0, 1), got {gamma}"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Param(format!("p must lie in (0, 1), got {p}")));
        }
        let theta = (p * (1.0 - gamma)).sqrt();
        Self::from_p_theta(p, theta)
    }
}

/// The bound value gamma^{-1} [x(1-p) + 1] e^{-lambda x}, clamped to 1.
pub fn tail_bound(x: f64, params: &TailBoundParams) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let raw = (x * (1.0 - params.p) + 1.0) * (-params.lambda * x).exp() / params.gamma;
    raw.min(1.0)
}

/// Debug route: the Chernoff exponent max_m min_t [m log(gamma phi(t)) - tx]
/// on a grid of integer m, with the inner minimization by golden section.
/// The theorem collapses this to -lambda x; the grid confirms it.
pub fn chernoff_grid_exponent(x: f64, gamma: f64, s: f64) -> Result<f64> {
    let p = 1.0 - (-s).exp();
    let m_hi = (x * (1.0 - p)).floor() as usize;
    if m_hi == 0 {
        return Err(Error::Param(format!("x = {x} gives an empty window grid")));
    }
    let tm = t_max(s)?;
    let mut best = f64::NEG_INFINITY;
    for m in 1..=m_hi {
        let lambda_of = |t: f64| {
            let mf = m as f64;
            mf * gamma.ln() + mf * (1.0 / (1.0 - cycle_gain(t, s))).ln() - t * x
        };
        // golden-section minimum of a convex function on (0, t_max)
        let (mut a, mut b) = (0.0, tm * (1.0 - 1e-9));
        let phi_ratio = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - phi_ratio * (b - a);
        let mut d = a + phi_ratio * (b - a);
        let (mut fc, mut fd) = (lambda_of(c), lambda_of(d));
        for _ in 0..200 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - phi_ratio * (b - a);
                fc = lambda_of(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi_ratio * (b - a);
                fd = lambda_of(d);
            }
        }
        best = best.max(lambda_of(0.5 * (a + b)));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_at_zero_and_slope() {
        assert_eq!(phi_nu(0.0, 1.0).unwrap(), 1.0);
        // phi'(0) = e^S by finite differences
        for s in [0.5, 1.0, 2.0] {
            let h = 1e-7;
            let slope = (phi_nu(h, s).unwrap() - 1.0) / h;
            assert!(
                (slope - s.exp()).abs() < 1e-5 * s.exp(),
                "S = {s}: slope {slope}"
            );
        }
    }

    #[test]
    fn phi_blows_up_at_t_max() {
        let s = 2.0;
        let tm = t_max(s).unwrap();
        assert!(phi_nu(0.999 * tm, s).unwrap() > 1e3);
        assert!(phi_nu(tm, s).is_err());
    }

    #[test]
    fn t_max_values() {
        assert_eq!(t_max(0.5).unwrap(), 1.0);
        assert_eq!(t_max(1.0).unwrap(), 1.0);
        let tm2 = t_max(2.0).unwrap();
        assert!((tm2 - 0.203_188).abs() < 1e-5);
        // defining equation t e^{S(1-t)} = 1
        assert!((cycle_gain(tm2, 2.0) - 1.0).abs() < 1e-10);
        assert!(t_max(3.0).unwrap() <= 1.0 / 3.0);
        assert!(t_max(0.0).is_err());
    }

    #[test]
    fn t_max_matches_bisection_root() {
        // Lambert route against direct bisection of t e^{S(1-t)} = 1
        for &s in &[1.1, 2.0, 5.0, 10.0] {
            let (mut lo, mut hi) = (1e-15, 1.0 / s);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if cycle_gain(mid, s) < 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let oracle = 0.5 * (lo + hi);
            let tm = t_max(s).unwrap();
            assert!((tm - oracle).abs() <= 1e-10, "S = {s}: {tm} vs {oracle}");
        }
    }

    #[test]
    fn lambda_solver_contract() {
        for &gamma in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            for &s in &[0.5, 1.0, 2.0, 4.0] {
                let l = solve_lambda(gamma, s).unwrap();
                let res = (gamma * phi_nu(l, s).unwrap() - 1.0).abs();
                assert!(
                    res <= LAMBDA_RESIDUAL,
                    "gamma {gamma} S {s}: residual {res}"
                );
                assert!(l > 0.0 && l < t_max(s).unwrap());
            }
        }
        assert!(solve_lambda(0.0, 1.0).is_err());
        assert!(solve_lambda(1.0, 1.0).is_err());
    }

    #[test]
    fn lambda_limits_and_monotonicity() {
        // gamma -> 1 sends lambda to 0
        assert!(solve_lambda(0.999, 1.0).unwrap() < 1e-2);
        // smaller gamma demands a larger root
        assert!(solve_lambda(0.3, 1.0).unwrap() > solve_lambda(0.7, 1.0).unwrap());
        // reference root of t e^{1-t} = 1/2
        assert!((solve_lambda(0.5, 1.0).unwrap() - 0.231_961).abs() < 1e-5);
    }

    #[test]
    fn phi_increasing_on_domain() {
        for &s in &[0.5, 1.1, 2.0, 5.0] {
            let tm = t_max(s).unwrap();
            let mut prev = phi_nu(0.0, s).unwrap();
            for i in 1..100 {
                let t = tm * (i as f64 / 100.0) * 0.999;
                let v = phi_nu(t, s).unwrap();
                assert!(v > prev, "S = {s}, t = {t}");
                prev = v;
            }
        }
    }

    #[test]
    fn bound_shape() {
        let params = TailBoundParams::from_p_gamma(0.8, 0.5).unwrap();
        // vacuous near zero, vanishing at infinity
        assert_eq!(tail_bound(0.0, &params), 1.0);
        assert_eq!(tail_bound(1e-9, &params), 1.0);
        assert!(tail_bound(1e3, &params) < 1e-20);
        // log-slope approaches -lambda once the polynomial prefactor slope
        // (1-p)/((1-p)x + 1) is small against lambda: about 10% of lambda
        // over [50, 100] at these parameters, about 1% over [500, 1000]
        let log_slope =
            |a: f64, b: f64| (tail_bound(b, &params).ln() - tail_bound(a, &params).ln()) / (b - a);
        let coarse = log_slope(50.0, 100.0);
        assert!((coarse + params.lambda).abs() < 0.12 * params.lambda);
        let fine = log_slope(500.0, 1000.0);
        assert!(
            (fine + params.lambda).abs() < 0.02 * params.lambda,
            "slope {fine} vs -{}",
            params.lambda
        );
    }

    #[test]
    fn params_validation() {
        assert!(TailBoundParams::from_p_theta(0.75, 0.7).is_ok());
        // theta^2 >= p breaks gamma
        assert!(TailBoundParams::from_p_theta(0.5, 0.9).is_err());
        assert!(TailBoundParams::from_p_theta(1.0, 0.5).is_err());
        assert!(TailBoundParams::from_p_theta(0.5, 0.0).is_err());
        let params = TailBoundParams::from_p_theta(0.75, 0.7).unwrap();
        assert!(params.t_max <= (1.0_f64).min(1.0 / params.s));
        assert!(params.lambda > 0.0 && params.lambda < params.t_max);
    }

    #[test]
    fn chernoff_grid_agrees_with_lambda() {
        // the grid maximum of the full Chernoff exponent matches -lambda x
        // within 1% at x = 100, gamma = 0.5, S = 1
        let (x, gamma, s) = (100.0, 0.5, 1.0);
        let lambda = solve_lambda(gamma, s).unwrap();
        let grid = chernoff_grid_exponent(x, gamma, s).unwrap();
        let rel = (grid + lambda * x).abs() / (lambda * x);
        assert!(rel < 0.01, "grid {grid} vs {}", -lambda * x);
    }
}
