//! The alternating binomial log sum A_n and its integral representation.
//!
//! A_n = sum_{i=1}^{n+1} C(n+1, i) (-1)^i log i is the log of the mean
//! interval at site n; it also equals the integral over (0, 1] of
//! [1 - prod_{k=1}^n (1 + x/k)^(-1)] / x, which is the route that stays
//! usable when n is far beyond any sensible multi-precision budget.
//! A_n - log log n decreases to Euler's constant.

use astro_float::BigFloat;

use crate::bigreal::{gauss_legendre, rel_diff, RealCtx};
use crate::constants::{euler_gamma, zeta};
use crate::error::{Error, Result};
use crate::quad::adaptive_gk;

use super::factored::FactoredMgf;
use super::moments::log_mean_sum;
use super::working_bits;

/// Evaluation route for A_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnMethod {
    /// Exact alternating sum; needs n + guard bits of precision.
    AlternatingSum,
    /// Quadrature of the integral representation; any n.
    Integral,
}

/// A_n by the chosen method at the requested output precision.
pub fn a_n(n: usize, method: AnMethod, bits: usize) -> Result<BigFloat> {
    match method {
        AnMethod::AlternatingSum => a_n_alternating(n, bits),
        AnMethod::Integral => a_n_integral(n, bits),
    }
}

/// A_n as the exact alternating sum (log of the mean interval).
pub fn a_n_alternating(n: usize, bits: usize) -> Result<BigFloat> {
    if n == 0 {
        return Err(Error::Param("A_n requires n >= 1".into()));
    }
    let wp = working_bits(n, bits);
    let mut ctx = RealCtx::new(wp)?;
    let mut a = log_mean_sum(&FactoredMgf::new(n), &mut ctx);
    a.set_precision(bits.max(64), astro_float::RoundingMode::ToEven)
        .map_err(|e| Error::Domain(format!("rounding failed: {e:?}")))?;
    Ok(a)
}

/// A_n by quadrature of the integral representation.
///
/// `bits <= 53` runs the fast f64 engine (adaptive Gauss-Kronrod, with the
/// log-product evaluated by series below x = 1/2 and directly above); larger
/// requests run composite Gauss-Legendre in multi-precision arithmetic,
/// budget-capped because every node costs n logarithms.
pub fn a_n_integral(n: usize, bits: usize) -> Result<BigFloat> {
    if n == 0 {
        return Err(Error::Param("A_n requires n >= 1".into()));
    }
    if bits <= 53 {
        let v = a_integral_f64(n)?;
        return Ok(BigFloat::from_f64(v, 64));
    }
    if n > 2_000 {
        return Err(Error::Budget(format!(
            "multi-precision integral route costs n logs per node; n = {n} exceeds 2000 \
             (use bits <= 53 for the f64 engine)"
        )));
    }
    a_integral_big(n, bits)
}

/// A_n - log log n, the gap above Euler's constant. f64 engine.
pub fn a_limit_gap(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Param("the gap A_n - log log n needs n >= 3".into()));
    }
    Ok(a_integral_f64(n)? - (n as f64).ln().ln())
}

/// Generalized harmonic numbers H_{n,m} for the series form of the
/// log product: direct sums for small n, zeta-minus-tail beyond.
struct HarmonicPowers {
    h: Vec<f64>, // h[m-1] = H_{n,m}, m = 1..=M
}

const SERIES_TERMS: usize = 96;

impl HarmonicPowers {
    fn new(n: usize) -> Self {
        let mut h = vec![0.0; SERIES_TERMS];
        if n <= 100_000 {
            // direct summation, highest k first
            for k in (1..=n).rev() {
                let inv = 1.0 / k as f64;
                let mut p = inv;
                for slot in h.iter_mut() {
                    *slot += p;
                    p *= inv;
                    if p == 0.0 {
                        break;
                    }
                }
            }
        } else {
            let nf = n as f64;
            h[0] = nf.ln() + euler_gamma() + 0.5 / nf - 1.0 / (12.0 * nf * nf)
                + 1.0 / (120.0 * nf.powi(4));
            for m in 2..=SERIES_TERMS {
                let mf = m as f64;
                // zeta(m) minus the Euler-Maclaurin tail sum_{k>n} k^-m
                let tail = nf.powf(1.0 - mf) / (mf - 1.0) - nf.powf(-mf) / 2.0
                    + mf * nf.powf(-mf - 1.0) / 12.0;
                h[m - 1] = zeta(m) - tail;
            }
        }
        Self { h }
    }

    /// log prod (1 + x/k) = sum_m (-1)^(m-1) H_{n,m} x^m / m, |x| < 1.
    fn log_product_series(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        let mut xp = 1.0;
        for (m, &hm) in self.h.iter().enumerate() {
            xp *= x;
            let term = if m % 2 == 0 { hm * xp } else { -hm * xp } / (m + 1) as f64;
            acc += term;
            if term.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    }
}

fn a_integral_f64(n: usize) -> Result<f64> {
    let powers = HarmonicPowers::new(n);
    let log_product = |x: f64| -> f64 {
        if x <= 0.5 {
            powers.log_product_series(x)
        } else {
            // Kahan-compensated direct sum of log1p(x/k)
            let mut s = 0.0;
            let mut c = 0.0;
            for k in 1..=n {
                let y = (x / k as f64).ln_1p() - c;
                let t = s + y;
                c = (t - s) - y;
                s = t;
            }
            s
        }
    };
    let g = |x: f64| -(-log_product(x)).exp_m1() / x;
    let (v, _) = adaptive_gk(&g, 0.0, 1.0, 1e-12)?;
    Ok(v)
}

fn a_integral_big(n: usize, bits: usize) -> Result<BigFloat> {
    let wp = bits + 40;
    let mut ctx = RealCtx::new(wp)?;
    let nodes = gauss_legendre(&mut ctx, 48);
    let one = ctx.from_u64(1);
    let two = ctx.from_u64(2);

    let integrate = |panels: usize, ctx: &mut RealCtx| -> BigFloat {
        let mut total = ctx.from_u64(0);
        for p in 0..panels {
            // panel [p, p+1] / panels mapped from [-1, 1]
            let a = ctx.div(&ctx.from_u64(p as u64), &ctx.from_u64(panels as u64));
            let b = ctx.div(&ctx.from_u64(p as u64 + 1), &ctx.from_u64(panels as u64));
            let mid = ctx.div(&ctx.add(&a, &b), &two);
            let half = ctx.div(&ctx.sub(&b, &a), &two);
            for (xi, w) in &nodes {
                let x = ctx.add(&mid, &ctx.mul(&half, xi));
                // L = sum_k ln((k + x) / k)
                let mut l = ctx.from_u64(0);
                for k in 1..=n as u64 {
                    let kf = ctx.from_u64(k);
                    let ratio = ctx.div(&ctx.add(&kf, &x), &kf);
                    let ln = ctx.ln(&ratio);
                    l = ctx.add(&l, &ln);
                }
                // g = (1 - exp(-L)) / x
                let em = ctx.exp(&ctx.neg(&l));
                let g = ctx.div(&ctx.sub(&one, &em), &x);
                total = ctx.add(&total, &ctx.mul(&ctx.mul(w, &g), &half));
            }
        }
        total
    };

    let mut prev = integrate(1, &mut ctx);
    let tol = 2f64.powi(-(bits as i32) + 8);
    for round in 1..=4 {
        let cur = integrate(1 << round, &mut ctx);
        let rd = rel_diff(&ctx, &cur, &prev);
        if rd <= tol {
            let mut out = cur;
            out.set_precision(bits, astro_float::RoundingMode::ToEven)
                .map_err(|e| Error::Domain(format!("rounding failed: {e:?}")))?;
            return Ok(out);
        }
        prev = cur;
    }
    Err(Error::Quadrature {
        estimate: crate::bigreal::to_f64(&prev),
        error_bound: f64::NAN,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::to_f64;

    #[test]
    fn small_values_match_means() {
        // A_1 = log 2 and A_2 = log(8/3), consistent with mu_1 = 2, mu_2 = 8/3
        let a1 = to_f64(&a_n_alternating(1, 64).unwrap());
        assert!((a1 - 2f64.ln()).abs() < 1e-14);
        let a2 = to_f64(&a_n_alternating(2, 64).unwrap());
        assert!((a2 - (8f64 / 3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn integral_route_matches_alternating_small_n() {
        for n in [1usize, 2, 5, 20, 45] {
            let alt = to_f64(&a_n_alternating(n, 64).unwrap());
            let int = to_f64(&a_n_integral(n, 53).unwrap());
            assert!((alt - int).abs() < 1e-10, "n = {n}: {alt} vs {int}");
        }
    }

    #[test]
    fn methods_agree_to_twenty_digits_at_n_200() {
        let ctx = RealCtx::new(192).unwrap();
        let alt = a_n(200, AnMethod::AlternatingSum, 192).unwrap();
        let int = a_n(200, AnMethod::Integral, 192).unwrap();
        let rd = rel_diff(&ctx, &alt, &int);
        assert!(rd < 1e-20, "relative difference {rd}");
    }

    #[test]
    fn harmonic_powers_em_matches_direct_at_crossover() {
        // n = 100_000 builds by direct summation, n = 100_001 by
        // zeta-minus-tail; they differ by exactly one term of the sum
        let direct = HarmonicPowers::new(100_000);
        let em = HarmonicPowers::new(100_001);
        for m in 1..=6 {
            let one_term = (1.0 / 100_001f64).powi(m as i32);
            let d = direct.h[m - 1] + one_term;
            let e = em.h[m - 1];
            assert!(
                (d - e).abs() < 1e-12 * d.abs().max(1.0),
                "m = {m}: {d} vs {e}"
            );
        }
    }

    #[test]
    fn gap_decreases_toward_gamma() {
        let g3 = a_limit_gap(3).unwrap();
        let g1k = a_limit_gap(1_000).unwrap();
        let g10k = a_limit_gap(10_000).unwrap();
        let g100k = a_limit_gap(100_000).unwrap();
        let gamma = euler_gamma();
        assert!(g3.is_finite() && g3 > gamma);
        assert!(g1k > g10k && g10k > g100k, "{g1k} {g10k} {g100k}");
        assert!(g100k > gamma);
    }

    #[test]
    fn integral_rejects_n_zero_and_oversize_big_requests() {
        assert!(a_n_integral(0, 53).is_err());
        assert!(matches!(a_n_integral(10_000, 128), Err(Error::Budget(_))));
    }
}
