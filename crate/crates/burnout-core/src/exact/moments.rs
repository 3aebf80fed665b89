//! Exact interval moments from the alternating log sums.

use astro_float::BigFloat;
use num_traits::Zero;

use crate::bigreal::RealCtx;
use crate::error::Result;

use super::factored::FactoredMgf;
use super::working_bits;

/// Mean interval at site n: mu_n = exp(sum_{i=1}^{n+1} C(n+1, i) (-1)^i log i).
///
/// `bits` is the requested output precision; work happens at n + guard bits
/// because the sum cancels about n bits, and the precision cap turns an
/// impossible request into an error instead of silent garbage.
pub fn mean_tau(n: usize, bits: usize) -> Result<BigFloat> {
    let wp = working_bits(n, bits);
    let mut ctx = RealCtx::new(wp)?;
    let a = log_mean_sum(&FactoredMgf::new(n), &mut ctx);
    let mut v = ctx.exp(&a);
    v.set_precision(bits.max(64), astro_float::RoundingMode::ToEven)
        .map_err(|e| crate::error::Error::Domain(format!("rounding failed: {e:?}")))?;
    Ok(v)
}

/// E tau_n^2 = 2 mu_n H_{n+1}.
///
/// The sign convention is pinned by the variance table Var tau = 1, 2, 8/3
/// at n = 0, 1, 2: the inner alternating sum equals +H_{n+1}.
pub fn second_moment_tau(n: usize, bits: usize) -> Result<BigFloat> {
    let wp = working_bits(n, bits);
    let mut ctx = RealCtx::new(wp)?;
    let mu = {
        let a = log_mean_sum(&FactoredMgf::new(n), &mut ctx);
        ctx.exp(&a)
    };
    let mut h = ctx.from_u64(0);
    for i in 1..=(n as u64 + 1) {
        h = ctx.add(&h, &ctx.div(&ctx.from_u64(1), &ctx.from_u64(i)));
    }
    let mut v = ctx.mul(&ctx.from_u64(2), &ctx.mul(&mu, &h));
    v.set_precision(bits.max(64), astro_float::RoundingMode::ToEven)
        .map_err(|e| crate::error::Error::Domain(format!("rounding failed: {e:?}")))?;
    Ok(v)
}

/// Var tau_n = E tau_n^2 - mu_n^2.
pub fn variance_tau(n: usize, bits: usize) -> Result<BigFloat> {
    let wp = working_bits(n, bits) + 16;
    let mut ctx = RealCtx::new(wp)?;
    let mu = {
        let a = log_mean_sum(&FactoredMgf::new(n), &mut ctx);
        ctx.exp(&a)
    };
    let mut h = ctx.from_u64(0);
    for i in 1..=(n as u64 + 1) {
        h = ctx.add(&h, &ctx.div(&ctx.from_u64(1), &ctx.from_u64(i)));
    }
    let second = ctx.mul(&ctx.from_u64(2), &ctx.mul(&mu, &h));
    let mut v = ctx.sub(&second, &ctx.mul(&mu, &mu));
    v.set_precision(bits.max(64), astro_float::RoundingMode::ToEven)
        .map_err(|e| crate::error::Error::Domain(format!("rounding failed: {e:?}")))?;
    Ok(v)
}

/// A_n = sum_k e_k log k over the factored exponent table (the log of the
/// mean). Shared by the moment routines and the alternating-sum route of
/// [`super::a_n`].
pub(crate) fn log_mean_sum(f: &FactoredMgf, ctx: &mut RealCtx) -> BigFloat {
    let mut acc = ctx.from_u64(0);
    for (k, e) in f.exponents() {
        if k == 1 || e.is_zero() {
            continue; // log 1 = 0
        }
        let ln = ctx.ln(&ctx.from_u64(k as u64));
        acc = ctx.add(&acc, &ctx.mul(&ctx.from_bigint(e), &ln));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{rel_diff, to_f64};

    #[test]
    fn mean_table() {
        let ctx = RealCtx::new(128).unwrap();
        let cases = [(0usize, 1.0), (1, 2.0)];
        for (n, expect) in cases {
            let mu = mean_tau(n, 128).unwrap();
            let e = ctx.from_f64(expect);
            assert!(rel_diff(&ctx, &mu, &e) < 1e-13, "mu_{n}");
        }
        // mu_2 = 8/3 exactly
        let mu2 = mean_tau(2, 128).unwrap();
        let e = ctx.div(&ctx.from_u64(8), &ctx.from_u64(3));
        assert!(rel_diff(&ctx, &mu2, &e) < 1e-13);
    }

    #[test]
    fn second_moments_and_variances() {
        let ctx = RealCtx::new(128).unwrap();
        // E tau^2 = 2, 6, 88/9 and Var = 1, 2, 8/3 at n = 0, 1, 2
        let cases = [(0usize, 2.0, 1.0), (1, 6.0, 2.0)];
        for (n, m2, var) in cases {
            let a = second_moment_tau(n, 128).unwrap();
            assert!(rel_diff(&ctx, &a, &ctx.from_f64(m2)) < 1e-13);
            let v = variance_tau(n, 128).unwrap();
            assert!(rel_diff(&ctx, &v, &ctx.from_f64(var)) < 1e-13);
        }
        let m2 = second_moment_tau(2, 128).unwrap();
        let expect = ctx.div(&ctx.from_u64(88), &ctx.from_u64(9));
        assert!(rel_diff(&ctx, &m2, &expect) < 1e-13);
        let v = variance_tau(2, 128).unwrap();
        let expect = ctx.div(&ctx.from_u64(8), &ctx.from_u64(3));
        assert!(rel_diff(&ctx, &v, &expect) < 1e-13);
    }

    #[test]
    fn mean_matches_mgf_slope_at_zero() {
        // u_n(t)/t -> mu_n as t -> 0; evaluate the factored form at a tiny t
        let ctx = RealCtx::new(256).unwrap();
        for n in [1usize, 5, 11, 20] {
            let f = FactoredMgf::new(n);
            let tiny = ctx.div(&ctx.from_u64(1), &ctx.powi(&ctx.from_u64(2), 120));
            let slope = f.eval_over_t(&tiny, &ctx).unwrap();
            let mu = mean_tau(n, 256).unwrap();
            let rd = rel_diff(&ctx, &slope, &mu);
            assert!(rd < 1e-10, "n = {n}: rel diff {rd}");
        }
    }

    #[test]
    fn impossible_precision_is_an_error_not_garbage() {
        let err = mean_tau(crate::bigreal::MAX_PRECISION_BITS, 64).unwrap_err();
        assert!(matches!(err, crate::error::Error::Precision { .. }));
    }

    #[test]
    fn variance_is_not_the_mean_for_large_n() {
        // Var tau_n / E tau_n tends to e^gamma log n / ... ; just pin that
        // the early coincidence Var = E breaks down
        let v = to_f64(&variance_tau(10, 96).unwrap());
        let m = to_f64(&mean_tau(10, 96).unwrap());
        assert!((v - m).abs() > 0.05 * m);
    }
}
