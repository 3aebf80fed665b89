//! Runnable verification suite.
//!
//! Ten numbered criteria cover the exact moment table, the closed form vs
//! recursion agreement, Monte Carlo laws against exact survival functions,
//! the log-log limit of the alternating sums, the a(n, m) identities, the
//! Dickman table, desk-scale convergence to the limit law, the GD(1)
//! sampler, the tail-bound numerics, and empirical domination on a torus.
//! `burnout verify` runs them; the `acceptance` integration test asserts
//! them one by one at full scale.

use crate::bigreal::{rel_diff, to_f64, RealCtx};
use crate::constants::{euler_gamma, exp_gamma};
use crate::error::Result;
use crate::exact::{
    a_limit_gap, a_nm_alternating, a_nm_nested, a_nm_nested_f64, mean_tau, second_moment_tau,
    u_recursive, FactoredMgf,
};
use crate::parallel::Parallelism;
use crate::quad::adaptive_gk;
use crate::rng::RngHandle;
use crate::sim::{sample_tau_replicated, simulate_graph_fire, FireOutcome, Torus};
use crate::special::{gd1_cdf, limit_mgf, shared_table, Gd1Spec};
use crate::stats::{empirical_survival, ks_statistic, SampleSummary};
use crate::tailbound::{
    chernoff_grid_exponent, estimate_theta, phi_nu, solve_lambda, t_max, tail_bound,
    TailBoundParams, LAMBDA_RESIDUAL,
};

/// Problem sizes: `Full` is the gate, `Quick` a smoke-test reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {:02} [{}] {} ({:.1}s / {:.0}s): {}",
            self.id,
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

fn run_criterion(
    id: usize,
    name: &'static str,
    limit_seconds: f64,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionReport {
    let start = std::time::Instant::now();
    let (mut passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    if seconds > limit_seconds {
        passed = false;
    }
    CriterionReport {
        id,
        name,
        passed,
        detail,
        seconds,
        limit_seconds,
    }
}

/// Runs all ten criteria in order.
pub fn run_all(scale: Scale, seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_01_exact_moment_table(scale),
        criterion_02_closed_form_vs_recursion(scale),
        criterion_03_mc_vs_exact_laws(scale, seed),
        criterion_04_loglog_limit(scale),
        criterion_05_nested_sum_identities(scale),
        criterion_06_dickman_suite(scale),
        criterion_07_limit_law_convergence(scale, seed),
        criterion_08_gd1_sampler(scale, seed),
        criterion_09_tail_bound_numerics(scale),
        criterion_10_empirical_domination(scale, seed),
    ]
}

/// Exact means and variances at sites 0, 1, 2.
pub fn criterion_01_exact_moment_table(_scale: Scale) -> CriterionReport {
    run_criterion(1, "exact moment table", 1.0, || {
        let ctx = RealCtx::new(128)?;
        let targets = [
            (0usize, (1u64, 1u64), (1u64, 1u64)),
            (1, (2, 1), (2, 1)),
            (2, (8, 3), (8, 3)),
        ];
        let mut worst = 0.0_f64;
        for (n, mean, var) in targets {
            let mu = mean_tau(n, 128)?;
            let mu_ref = ctx.div(&ctx.from_u64(mean.0), &ctx.from_u64(mean.1));
            worst = worst.max(rel_diff(&ctx, &mu, &mu_ref));
            let m2 = second_moment_tau(n, 128)?;
            let var_val = ctx.sub(&m2, &ctx.mul(&mu, &mu));
            let var_ref = ctx.div(&ctx.from_u64(var.0), &ctx.from_u64(var.1));
            worst = worst.max(rel_diff(&ctx, &var_val, &var_ref));
        }
        Ok((worst <= 1e-12, format!("max relative error {worst:.2e}")))
    })
}

/// Factored closed form against the level recursion, n <= 30.
pub fn criterion_02_closed_form_vs_recursion(_scale: Scale) -> CriterionReport {
    run_criterion(2, "closed form vs recursion", 5.0, || {
        let ctx = RealCtx::new(160)?;
        let mut worst = 0.0_f64;
        for n in 0..=30usize {
            let f = FactoredMgf::new(n);
            for tval in [-2.0, -1.0, -0.5, 0.25, 0.5] {
                let t = ctx.from_f64(tval);
                let a = f.eval(&t, &ctx)?;
                let b = u_recursive(n, &t, &ctx)?;
                worst = worst.max(rel_diff(&ctx, &a, &b));
            }
        }
        Ok((
            worst <= 1e-12,
            format!("max relative difference {worst:.2e}"),
        ))
    })
}

fn tau1_cdf(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        1.0 - (u + 1.0) * (-u).exp()
    }
}

fn tau2_cdf(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        1.0 - ((2.0 * u * u + 10.0 * u + 7.0) * (-u).exp() + (-3.0 * u).exp()) / 8.0
    }
}

/// Sampled interval laws against the exact survival functions.
pub fn criterion_03_mc_vs_exact_laws(scale: Scale, seed: u64) -> CriterionReport {
    run_criterion(3, "Monte Carlo vs exact laws", 60.0, || {
        let (samples, tol) = match scale {
            Scale::Full => (1_000_000usize, 0.005),
            Scale::Quick => (100_000, 0.01),
        };
        let handle = RngHandle::new(seed, 1);
        let gaps1 = sample_tau_replicated(1, samples, &handle, 16, Parallelism::Parallel)?;
        let ks1 = ks_statistic(&gaps1, tau1_cdf)?;
        let gaps2 = sample_tau_replicated(2, samples, &handle, 16, Parallelism::Parallel)?;
        let ks2 = ks_statistic(&gaps2, tau2_cdf)?;
        Ok((
            ks1 <= tol && ks2 <= tol,
            format!("KS(tau_1) = {ks1:.5}, KS(tau_2) = {ks2:.5}, tolerance {tol}"),
        ))
    })
}

/// Pinned values of A_n - log log n from the integral-representation oracle,
/// frozen to 1e-8; the criterion checks monotone descent and the distance to
/// Euler's constant at n = 10^6.
const A_GAP_PINNED: [(usize, f64); 4] = [
    (1_000, 0.644_075_115_538),
    (10_000, 0.629_981_946_625),
    (100_000, 0.620_827_726_209),
    (1_000_000, 0.614_375_467_008),
];

/// The limit A_n - log log n -> gamma along powers of ten.
pub fn criterion_04_loglog_limit(scale: Scale) -> CriterionReport {
    run_criterion(4, "alternating log-sum limit", 120.0, || {
        let grid: &[(usize, f64)] = match scale {
            Scale::Full => &A_GAP_PINNED,
            Scale::Quick => &A_GAP_PINNED[..2],
        };
        let mut gaps = Vec::new();
        let mut pin_err = 0.0_f64;
        for &(n, pinned) in grid {
            let g = a_limit_gap(n)?;
            if pinned.is_finite() {
                pin_err = pin_err.max((g - pinned).abs());
            }
            gaps.push(g);
        }
        let decreasing = gaps.windows(2).all(|w| w[0] > w[1]);
        let above = gaps.iter().all(|&g| g > euler_gamma());
        let near = match scale {
            Scale::Full => gaps[gaps.len() - 1] - euler_gamma() <= 0.2,
            Scale::Quick => gaps[gaps.len() - 1] - euler_gamma() <= 0.35,
        };
        Ok((
            decreasing && above && near && pin_err <= 1e-6,
            format!(
                "gaps {:?}, gamma = {:.8}, max drift from pinned {pin_err:.2e}",
                gaps.iter()
                    .map(|g| (g * 1e6).round() / 1e6)
                    .collect::<Vec<_>>(),
                euler_gamma()
            ),
        ))
    })
}

/// a(n, m): exact route equality, the log bound, and the asymptotic ratio.
pub fn criterion_05_nested_sum_identities(scale: Scale) -> CriterionReport {
    run_criterion(5, "alternating power-sum identities", 30.0, || {
        let (n_max, m_max, big_n) = match scale {
            Scale::Full => (25usize, 5usize, 1_000_000usize),
            Scale::Quick => (12, 3, 100_000),
        };
        for n in 1..=n_max {
            for m in 1..=m_max {
                if a_nm_alternating(n, m)? != a_nm_nested(n, m)? {
                    return Ok((false, format!("exact routes disagree at ({n}, {m})")));
                }
                let bound = ((n as f64).ln() + 1.0).powi(m as i32);
                let val = a_nm_nested_f64(n, m)?;
                if val > bound * (1.0 + 1e-12) {
                    return Ok((false, format!("log bound violated at ({n}, {m})")));
                }
            }
        }
        let ratio = |n: usize| -> Result<f64> {
            Ok(a_nm_nested_f64(n, 3)? * 6.0 / (n as f64).ln().powi(3))
        };
        let r_small = ratio(1_000)?;
        let r_big = ratio(big_n)?;
        let in_window = r_big > 0.9 && r_big < 1.6;
        let tightens = (r_big - 1.0).abs() < (r_small - 1.0).abs();
        Ok((
            in_window && tightens,
            format!("exact grid OK; ratio {r_small:.4} at 1e3 -> {r_big:.4} at {big_n:.0e}"),
        ))
    })
}

/// Stirling-series log-gamma for the rho <= 1/Gamma(x+1) envelope check.
fn lgamma(z: f64) -> f64 {
    // shift into the asymptotic region, then Stirling with three corrections
    let mut shift = 0.0;
    let mut z = z;
    while z < 12.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let ln2pi = (2.0 * std::f64::consts::PI).ln();
    shift + (z - 0.5) * z.ln() - z + 0.5 * ln2pi + 1.0 / (12.0 * z) - 1.0 / (360.0 * z.powi(3))
        + 1.0 / (1260.0 * z.powi(5))
}

/// Dickman table: exact anchor, ODE residual, normalizations, Gamma bound.
pub fn criterion_06_dickman_suite(_scale: Scale) -> CriterionReport {
    run_criterion(6, "Dickman function suite", 10.0, || {
        let table = shared_table();
        let rho2_err = (table.rho(2.0)? - (1.0 - 2f64.ln())).abs();

        // ODE residual |x rho'(x) + rho(x-1)| at grid nodes of [1, 10]
        let mut residual = 0.0_f64;
        let h = table.step();
        let steps = (9.0 / h) as usize;
        for i in 0..=steps {
            let x = 1.0 + i as f64 * h;
            let r = (x * table.rho_prime(x)? + table.rho(x - 1.0)?).abs();
            residual = residual.max(r);
        }

        // density normalization: integral of rho(x-1)/x over [1, 17]
        let (mass, _) = adaptive_gk(
            &|x: f64| table.density(x).unwrap_or(0.0),
            1.0,
            table.x_max() + 1.0,
            1e-10,
        )?;
        let mass_err = (mass - 1.0).abs();

        let total_err = (table.total_mass() - exp_gamma()).abs();

        // rho stays under the reciprocal Gamma envelope on [1, 10]; the two
        // sides are equal at x = 1, so allow rounding there
        let mut envelope_ok = true;
        for i in 0..=360 {
            let x = 1.0 + i as f64 * 0.025;
            if table.rho(x)? > (-lgamma(x + 1.0)).exp() * (1.0 + 1e-9) {
                envelope_ok = false;
                break;
            }
        }

        let pass = rho2_err <= 1e-10
            && residual <= 1e-8
            && mass_err <= 1e-8
            && total_err <= 1e-6
            && envelope_ok;
        Ok((
            pass,
            format!(
                "rho(2) err {rho2_err:.1e}, ODE residual {residual:.1e}, \
                 density mass err {mass_err:.1e}, total mass err {total_err:.1e}, \
                 Gamma envelope {}",
                if envelope_ok { "holds" } else { "violated" }
            ),
        ))
    })
}

/// Desk-scale convergence to the limit law: finite-n MGF pointwise, and the
/// normalized interval distribution in Kolmogorov distance.
pub fn criterion_07_limit_law_convergence(scale: Scale, seed: u64) -> CriterionReport {
    run_criterion(7, "limit-law convergence", 600.0, || {
        let (orders, tau_n, tau_samples, ks_tol) = match scale {
            Scale::Full => (
                vec![100usize, 1_000, 10_000],
                10_000usize,
                100_000usize,
                0.15,
            ),
            Scale::Quick => (vec![100, 1_000], 1_000, 20_000, 0.2),
        };

        // pointwise MGF convergence at s in {-1, -1/2, 1/4}
        let mut mgf_monotone = true;
        let mut mgf_detail = String::new();
        for s in [-1.0, -0.5, 0.25] {
            let mut prev = f64::INFINITY;
            let target = limit_mgf(s)?;
            for &n in &orders {
                let ctx = RealCtx::new(n + 96)?;
                let t = ctx.from_f64(s / (n as f64).ln());
                let u = FactoredMgf::new(n).eval(&t, &ctx)?;
                let phi_n = 1.0 + to_f64(&u);
                let delta = (phi_n - target).abs();
                if delta >= prev {
                    mgf_monotone = false;
                }
                prev = delta;
            }
            mgf_detail.push_str(&format!(" d(s={s}) = {prev:.4};"));
        }

        // Kolmogorov distance of tau_n / log n against 1 - rho
        let table = shared_table();
        let cdf = |x: f64| {
            if x <= 1.0 {
                0.0
            } else if x >= table.x_max() {
                1.0
            } else {
                1.0 - table.rho(x).unwrap_or(0.0)
            }
        };
        let handle = RngHandle::new(seed, 2);
        let ks_at = |n: usize, count: usize| -> Result<f64> {
            let gaps = sample_tau_replicated(n, count, &handle, 16, Parallelism::Parallel)?;
            let ln_n = (n as f64).ln();
            let scaled: Vec<f64> = gaps.iter().map(|g| g / ln_n).collect();
            ks_statistic(&scaled, cdf)
        };
        let ks_small = ks_at(100, tau_samples)?;
        let ks_large = ks_at(tau_n, tau_samples)?;

        let pass = mgf_monotone && ks_large <= ks_tol && ks_large < ks_small;
        Ok((
            pass,
            format!(
                "MGF deltas monotone: {mgf_monotone};{mgf_detail} \
                 KS at n=100: {ks_small:.4}, at n={tau_n}: {ks_large:.4} (tol {ks_tol})"
            ),
        ))
    })
}

/// GD(1) sampler against its distribution function.
pub fn criterion_08_gd1_sampler(scale: Scale, seed: u64) -> CriterionReport {
    run_criterion(8, "GD(1) residual-time sampler", 30.0, || {
        let (count, mean_tol, ks_tol) = match scale {
            Scale::Full => (100_000usize, 0.01, 0.01),
            Scale::Quick => (20_000, 0.02, 0.02),
        };
        let spec = Gd1Spec::new(1e-9)?;
        let mut rng = RngHandle::new(seed, 3).stage_rng(0);
        let draws: Vec<f64> = (0..count).map(|_| spec.sample(&mut rng)).collect();
        let summary = SampleSummary::new(draws.clone())?;
        let mean_err = (summary.mean() - 1.0).abs();
        let table = shared_table();
        let ks = ks_statistic(&draws, |x| {
            if x >= table.x_max() {
                1.0
            } else {
                gd1_cdf(x).unwrap_or(1.0)
            }
        })?;
        Ok((
            mean_err <= mean_tol && ks <= ks_tol,
            format!("mean 1 {mean_err:+.4e}, KS {ks:.4} at {count} draws"),
        ))
    })
}

/// Tail-bound scalar machinery: solver contract, pole location, grid check.
pub fn criterion_09_tail_bound_numerics(_scale: Scale) -> CriterionReport {
    run_criterion(9, "tail-bound numerics", 5.0, || {
        for &gamma in &[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9] {
            for &s in &[0.5, 1.0, 2.0, 4.0] {
                let lambda = solve_lambda(gamma, s)?;
                let residual = (gamma * phi_nu(lambda, s)? - 1.0).abs();
                if residual > LAMBDA_RESIDUAL {
                    return Ok((
                        false,
                        format!("solver residual {residual:.2e} at gamma {gamma}, S {s}"),
                    ));
                }
            }
        }
        // pole of phi at S = 2 against a bisection oracle on t e^{S(1-t)} = 1
        let oracle = {
            let g = |t: f64| t * (2.0 * (1.0 - t)).exp();
            let (mut lo, mut hi) = (1e-12, 0.5);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) < 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let tmax_err = (t_max(2.0)? - oracle).abs();
        let exact_below_one = t_max(0.5)? == 1.0 && t_max(1.0)? == 1.0;

        let (x, gamma, s) = (100.0, 0.5, 1.0);
        let lambda = solve_lambda(gamma, s)?;
        let grid = chernoff_grid_exponent(x, gamma, s)?;
        let grid_rel = (grid + lambda * x).abs() / (lambda * x);

        let pass = tmax_err <= 1e-10 && exact_below_one && grid_rel <= 0.01;
        Ok((
            pass,
            format!(
                "solver grid OK, t_max(2) err {tmax_err:.1e}, \
                 Chernoff grid vs -lambda x: {grid_rel:.4}"
            ),
        ))
    })
}

/// Empirical first-burnout survival on a torus dominated by the bound.
pub fn criterion_10_empirical_domination(scale: Scale, seed: u64) -> CriterionReport {
    run_criterion(10, "empirical domination on a torus", 600.0, || {
        let (side, replicas, theta_replicas, horizon) = match scale {
            Scale::Full => (64usize, 10_000usize, 3_000usize, 80.0),
            Scale::Quick => (32, 2_000, 1_000, 60.0),
        };
        let p = 0.75;
        let torus = Torus::new(side, side)?;
        let handle = RngHandle::new(seed, 4);

        let theta = estimate_theta(&torus, p, theta_replicas, &handle, Parallelism::Parallel)?;
        let params = TailBoundParams::from_p_theta(p, theta.value)?;

        let g = torus.graph();
        let target = torus.index(side / 2, side / 2);
        let times: Vec<f64> = crate::parallel::map_replicas(Parallelism::Parallel, replicas, |r| {
            match simulate_graph_fire(&g, target, horizon, &handle.replica(r as u64)) {
                Ok(FireOutcome::Burned { time }) => time,
                _ => f64::INFINITY,
            }
        });
        let finite = times.iter().filter(|t| t.is_finite()).count();
        let summary = SampleSummary::new(times.clone())?;
        let decile = summary.quantile(0.1);

        // survival curve must sit below the bound from the first decile out
        let grid: Vec<f64> = {
            let mut g = Vec::new();
            let mut x = decile;
            while x <= horizon {
                g.push(x);
                x += 0.5;
            }
            g
        };
        let curve = empirical_survival(&times, &grid)?;
        let mut violations = 0usize;
        let mut worst_margin = f64::INFINITY;
        for pt in &curve {
            let bound = tail_bound(pt.x, &params);
            worst_margin = worst_margin.min(bound - pt.survival);
            if pt.survival > bound {
                violations += 1;
            }
        }
        Ok((
            violations == 0,
            format!(
                "theta = {:.4} ({:.1e} se), gamma = {:.4}, lambda = {:.4}; \
                 {finite}/{replicas} burned by t = {horizon}; decile {decile:.2}; \
                 min(bound - survival) = {worst_margin:.4} over {} grid points",
                theta.value,
                theta.std_error,
                params.gamma,
                params.lambda,
                curve.len()
            ),
        ))
    })
}
