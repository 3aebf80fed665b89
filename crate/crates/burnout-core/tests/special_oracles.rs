//! Independent quadrature oracles for the special-function suite.

use burnout_core::rng::RngHandle;
use burnout_core::special::{dickman_rho, expint_ei, gd1_cdf, limit_mgf, shared_table, Gd1Spec};
use burnout_core::stats::ks_statistic;

/// Composite Simpson rule, the reference integrator for these tests.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels * 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn rho_at_three_against_quadrature_oracle() {
    // rho(3) = (1 - log 2) - integral_2^3 (1 - log(t - 1)) / t dt
    let integral = simpson(|t: f64| (1.0 - (t - 1.0).ln()) / t, 2.0, 3.0, 4_000);
    let oracle = (1.0 - 2f64.ln()) - integral;
    assert!(
        (oracle - 0.048_608_388_291_131_6).abs() < 1e-12,
        "oracle {oracle}"
    );
    assert!((dickman_rho(3.0).unwrap() - oracle).abs() < 1e-9);
}

#[test]
fn ei_against_principal_value_oracle() {
    // PV integral of e^t / t over (-inf, 1/2]: fold the singular part into
    // sinh, truncate the far tail at -40
    let near = simpson(
        |t: f64| {
            if t == 0.0 {
                2.0
            } else {
                (t.exp() - (-t).exp()) / t
            }
        },
        0.0,
        0.5,
        2_000,
    );
    let far = simpson(|t: f64| (-t).exp() / t, 0.5, 5.0, 40_000)
        + simpson(|t: f64| (-t).exp() / t, 5.0, 40.0, 20_000);
    let oracle = near - far;
    assert!(
        (expint_ei(0.5).unwrap() - oracle).abs() < 1e-10,
        "oracle {oracle}"
    );
}

/// Right-continuous density for quadrature over [1, x_max + 1]: the density
/// jumps from 0 to 1 at x = 1, and a closed-endpoint rule must see the
/// right limit there.
fn density_rc(x: f64) -> f64 {
    let table = shared_table();
    if x < 1.0 {
        0.0
    } else {
        table.rho((x - 1.0).max(0.0)).unwrap_or(0.0) / x
    }
}

#[test]
fn limit_mgf_against_density_quadrature() {
    // E e^{-xi} through the Dickman density
    let table = shared_table();
    let oracle = simpson(
        |x: f64| (-x).exp() * density_rc(x),
        1.0,
        table.x_max() + 1.0,
        40_000,
    );
    let v = limit_mgf(-1.0).unwrap();
    assert!((v - oracle).abs() < 1e-6, "mgf {v} vs quadrature {oracle}");
}

#[test]
fn limit_mgf_quarter_against_density_quadrature() {
    // positive argument exercises the e^{Ei} branch as printed in the source
    let table = shared_table();
    let oracle = simpson(
        |x: f64| (0.25 * x).exp() * density_rc(x),
        1.0,
        table.x_max() + 1.0,
        40_000,
    );
    let v = limit_mgf(0.25).unwrap();
    assert!((v - oracle).abs() < 1e-6, "mgf {v} vs quadrature {oracle}");
}

#[test]
fn gd1_sampler_against_table_cdf() {
    let spec = Gd1Spec::new(1e-9).unwrap();
    let mut rng = RngHandle::new(71, 0).stage_rng(4);
    let draws: Vec<f64> = (0..100_000).map(|_| spec.sample(&mut rng)).collect();
    let x_max = shared_table().x_max();
    let ks = ks_statistic(&draws, |x| {
        if x >= x_max {
            1.0
        } else {
            gd1_cdf(x).unwrap_or(1.0)
        }
    })
    .unwrap();
    assert!(ks <= 0.01, "KS {ks}");
}

#[test]
fn finite_order_mgf_converges_to_limit() {
    // |phi_n(s / log n) - phi_xi(s)| shrinks from n = 100 to n = 1000 for
    // every s in the pointwise-convergence window, including s = 1/2
    use burnout_core::bigreal::{to_f64, RealCtx};
    use burnout_core::exact::FactoredMgf;
    for s in [-1.0, -0.5, 0.25, 0.5] {
        let target = limit_mgf(s).unwrap();
        let mut deltas = Vec::new();
        for n in [100usize, 1_000] {
            let ctx = RealCtx::new(n + 96).unwrap();
            let t = ctx.from_f64(s / (n as f64).ln());
            let u = FactoredMgf::new(n).eval(&t, &ctx).unwrap();
            deltas.push((1.0 + to_f64(&u) - target).abs());
        }
        assert!(
            deltas[1] < deltas[0],
            "s = {s}: deltas {deltas:?} not shrinking"
        );
    }
}

#[test]
fn density_mass_spot_check() {
    // f = -rho', so the density mass over [1, 5] is rho(1) - rho(5)
    let mass = simpson(density_rc, 1.0, 5.0, 20_000);
    let expect = 1.0 - dickman_rho(5.0).unwrap();
    assert!((mass - expect).abs() < 1e-8, "{mass} vs {expect}");
}
