//! Consistency of the exact-computation routes across modules.

use burnout_core::bigreal::to_f64;
use burnout_core::constants::euler_gamma;
use burnout_core::exact::{a_limit_gap, a_n, a_nm_nested_f64, mean_tau, AnMethod};

#[test]
fn integral_log_sum_exponentiates_to_the_mean() {
    // exp(A_n) = mu_n, same index on both sides
    for n in [1usize, 3, 10, 25, 50] {
        let a = to_f64(&a_n(n, AnMethod::Integral, 53).unwrap());
        let mu = to_f64(&mean_tau(n, 128).unwrap());
        let rel = (a.exp() - mu).abs() / mu;
        assert!(rel < 1e-10, "n = {n}: exp(A) {} vs mu {mu}", a.exp());
    }
}

#[test]
fn normalized_log_mean_descends_to_gamma() {
    // log(mu_n / log n) = A_n - log log n decreases toward Euler's constant
    let gaps: Vec<f64> = [100usize, 1_000, 10_000]
        .iter()
        .map(|&n| a_limit_gap(n).unwrap())
        .collect();
    assert!(gaps.windows(2).all(|w| w[0] > w[1]), "{gaps:?}");
    assert!(gaps.iter().all(|&g| g > euler_gamma()));
}

#[test]
fn asymptotic_ratio_window_at_million() {
    // a(n, m) m! / log^m n stays in [0.9, 1.5] for m <= 3 at n = 10^6 and
    // drifts toward 1 as n grows
    let n = 1_000_000usize;
    let l = (n as f64).ln();
    let mut mfact = 1.0;
    for m in 1..=3 {
        mfact *= m as f64;
        let ratio = a_nm_nested_f64(n, m).unwrap() * mfact / l.powi(m as i32);
        assert!((0.9..=1.5).contains(&ratio), "m = {m}: ratio {ratio}");
        let ratio_small =
            a_nm_nested_f64(1_000, m).unwrap() * mfact / (1_000f64).ln().powi(m as i32);
        assert!((ratio - 1.0).abs() < (ratio_small - 1.0).abs(), "m = {m}");
    }
}

#[test]
fn high_precision_integral_matches_alternating_beyond_f64() {
    // at n = 120 the alternating sum cancels ~120 bits; the multi-precision
    // integral reproduces it to 1e-18
    use burnout_core::bigreal::{rel_diff, RealCtx};
    let ctx = RealCtx::new(160).unwrap();
    let alt = a_n(120, AnMethod::AlternatingSum, 160).unwrap();
    let int = a_n(120, AnMethod::Integral, 160).unwrap();
    let rd = rel_diff(&ctx, &alt, &int);
    assert!(rd < 1e-18, "relative difference {rd}");
}
