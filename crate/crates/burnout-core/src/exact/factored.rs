//! Closed product form of the interval MGF and the level recursion.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigreal::RealCtx;
use crate::error::{Error, Result};

use super::working_bits;

/// u_n(t) = phi_n(t) - 1 as a factored product t * prod (k - t)^(e_k),
/// with exact signed exponents e_k = (-1)^k C(n+1, k), k = 1..=n+1.
#[derive(Debug, Clone)]
pub struct FactoredMgf {
    order: usize,
    exponents: Vec<BigInt>,
}

impl FactoredMgf {
    /// Exponent table for the interval at site `order`.
    pub fn new(order: usize) -> Self {
        let n1 = order + 1;
        let mut exponents = Vec::with_capacity(n1);
        let mut binom = BigInt::one(); // C(n+1, k), starting at k = 1
        for k in 1..=n1 {
            binom = binom * BigInt::from(n1 + 1 - k) / BigInt::from(k);
            let e = if k % 2 == 0 {
                binom.clone()
            } else {
                -binom.clone()
            };
            exponents.push(e);
        }
        Self { order, exponents }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Exponent of the factor (k - t); zero outside 1..=n+1.
    pub fn exponent(&self, k: usize) -> BigInt {
        if k >= 1 && k <= self.exponents.len() {
            self.exponents[k - 1].clone()
        } else {
            BigInt::zero()
        }
    }

    /// Iterator over (k, e_k).
    pub fn exponents(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.exponents.iter().enumerate().map(|(i, e)| (i + 1, e))
    }

    /// Sum of all exponents; -1 for every order.
    pub fn exponent_sum(&self) -> BigInt {
        self.exponents.iter().sum()
    }

    /// u_n(t), evaluated in log space at `ctx` precision (raised internally
    /// to order + guard bits to absorb the alternating cancellation).
    pub fn eval(&self, t: &BigFloat, ctx: &RealCtx) -> Result<BigFloat> {
        if t.is_zero() {
            return Ok(ctx.from_u64(0));
        }
        let factor = self.eval_over_t(t, ctx)?;
        Ok(ctx.mul(t, &factor))
    }

    /// u_n(t) / t = prod (k - t)^(e_k), which extends continuously to t = 0
    /// where it equals the mean interval at site n.
    pub fn eval_over_t(&self, t: &BigFloat, ctx: &RealCtx) -> Result<BigFloat> {
        let one = ctx.from_u64(1);
        if RealCtx::cmp(t, &one) != std::cmp::Ordering::Less {
            return Err(Error::Domain(format!(
                "factored MGF defined for t < 1, got t = {}",
                crate::bigreal::to_f64(t)
            )));
        }
        let wp = working_bits(self.order, ctx.bits());
        let mut wctx = RealCtx::new(wp)?;
        let mut tw = t.clone();
        tw.set_precision(wp, astro_float::RoundingMode::ToEven)
            .map_err(|e| Error::Domain(format!("precision raise failed: {e:?}")))?;
        let log_sum = log_factor_sum(&self.exponents, &tw, &mut wctx)?;
        let mut v = wctx.exp(&log_sum);
        v.set_precision(ctx.bits(), astro_float::RoundingMode::ToEven)
            .map_err(|e| Error::Domain(format!("rounding failed: {e:?}")))?;
        Ok(v)
    }
}

/// sum_k e_k ln(k - t) at working precision. Chunked across the worker pool
/// for large orders; each chunk owns its constants cache.
fn log_factor_sum(exponents: &[BigInt], t: &BigFloat, wctx: &mut RealCtx) -> Result<BigFloat> {
    let wp = wctx.bits();
    let chunked = |lo: usize, hi: usize| -> BigFloat {
        let mut cctx = RealCtx::new(wp).expect("working precision already validated");
        let mut acc = cctx.from_u64(0);
        for (i, e) in exponents[lo..hi].iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let k = cctx.from_u64((lo + i + 1) as u64);
            let ln = cctx.ln(&cctx.sub(&k, t));
            acc = cctx.add(&acc, &cctx.mul(&cctx.from_bigint(e), &ln));
        }
        acc
    };
    #[cfg(feature = "parallel")]
    if exponents.len() >= 512 {
        use rayon::prelude::*;
        let chunk = exponents
            .len()
            .div_ceil(rayon::current_num_threads().max(1) * 4);
        let partials: Vec<BigFloat> = (0..exponents.len())
            .step_by(chunk)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|lo| chunked(lo, (lo + chunk).min(exponents.len())))
            .collect();
        let mut acc = wctx.from_u64(0);
        for p in partials {
            acc = wctx.add(&acc, &p);
        }
        return Ok(acc);
    }
    Ok(chunked(0, exponents.len()))
}

/// u_n(t) by n-fold application of u_{j+1}(t) = -u_j(t) / u_j(t - 1),
/// starting from u_0(t) = t / (1 - t).
///
/// Needs u_0 at the shifted points t, t-1, ..., t-n; for t < 1 every shifted
/// argument stays below 1, so the only failure mode is an exact zero
/// denominator, reported with the offending level.
pub fn u_recursive(order: usize, t: &BigFloat, ctx: &RealCtx) -> Result<BigFloat> {
    let one = ctx.from_u64(1);
    if RealCtx::cmp(t, &one) != std::cmp::Ordering::Less {
        return Err(Error::Domain(format!(
            "recursion defined for t < 1, got t = {}",
            crate::bigreal::to_f64(t)
        )));
    }
    // base row: u_0(t - i) for i = 0..=order
    let mut row: Vec<BigFloat> = (0..=order)
        .map(|i| {
            let s = ctx.sub(t, &ctx.from_u64(i as u64));
            ctx.div(&s, &ctx.sub(&one, &s))
        })
        .collect();
    for level in 1..=order {
        let width = order - level;
        let mut next = Vec::with_capacity(width + 1);
        for i in 0..=width {
            if row[i + 1].is_zero() {
                return Err(Error::Pole {
                    level,
                    what: format!("u_{}(t - {}) = 0 divides the recursion", level - 1, i + 1),
                });
            }
            next.push(ctx.neg(&ctx.div(&row[i], &row[i + 1])));
        }
        row = next;
    }
    Ok(row.into_iter().next().expect("row never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{rel_diff, to_f64};

    #[test]
    fn exponent_tables_match_closed_forms() {
        // u_1 = t (2-t) / (1-t)^2 and u_2 = t (2-t)^3 / ((1-t)^3 (3-t))
        let f1 = FactoredMgf::new(1);
        assert_eq!(f1.exponent(1), BigInt::from(-2));
        assert_eq!(f1.exponent(2), BigInt::from(1));
        let f2 = FactoredMgf::new(2);
        assert_eq!(f2.exponent(1), BigInt::from(-3));
        assert_eq!(f2.exponent(2), BigInt::from(3));
        assert_eq!(f2.exponent(3), BigInt::from(-1));
        assert_eq!(f2.exponent(4), BigInt::zero());
    }

    #[test]
    fn exponent_sum_is_minus_one() {
        for n in [0usize, 1, 2, 5, 17, 40] {
            assert_eq!(
                FactoredMgf::new(n).exponent_sum(),
                BigInt::from(-1),
                "n = {n}"
            );
        }
    }

    #[test]
    fn u0_u1_u2_values() {
        let ctx = RealCtx::new(128).unwrap();
        let t = ctx.from_f64(0.5);
        let u0 = FactoredMgf::new(0).eval(&t, &ctx).unwrap();
        assert!((to_f64(&u0) - 1.0).abs() < 1e-14); // 0.5 / 0.5
        let u1 = FactoredMgf::new(1).eval(&t, &ctx).unwrap();
        assert!((to_f64(&u1) - 3.0).abs() < 1e-13); // 0.5 * 1.5 / 0.25
        let u2 = FactoredMgf::new(2).eval(&t, &ctx).unwrap();
        assert!((to_f64(&u2) - 5.4).abs() < 1e-13); // 0.5 * 1.5^3 / (0.5^3 * 2.5)
    }

    #[test]
    fn recursion_matches_closed_form_values() {
        let ctx = RealCtx::new(128).unwrap();
        let t = ctx.from_f64(0.5);
        assert!((to_f64(&u_recursive(0, &t, &ctx).unwrap()) - 1.0).abs() < 1e-14);
        assert!((to_f64(&u_recursive(1, &t, &ctx).unwrap()) - 3.0).abs() < 1e-13);
        assert!((to_f64(&u_recursive(2, &t, &ctx).unwrap()) - 5.4).abs() < 1e-13);
    }

    #[test]
    fn factored_and_recursive_agree_to_order_30() {
        let ctx = RealCtx::new(160).unwrap();
        for n in [5usize, 12, 23, 30] {
            let f = FactoredMgf::new(n);
            for tval in [-2.0, -1.0, -0.5, 0.25, 0.5] {
                let t = ctx.from_f64(tval);
                let a = f.eval(&t, &ctx).unwrap();
                let b = u_recursive(n, &t, &ctx).unwrap();
                let rd = rel_diff(&ctx, &a, &b);
                assert!(rd < 1e-12, "n = {n}, t = {tval}: rel diff {rd}");
            }
        }
    }

    #[test]
    fn eval_at_high_order_crosscheck() {
        // the two exact routes at n = 30 agree at a negative argument
        let ctx = RealCtx::new(128).unwrap();
        let t = ctx.from_f64(-0.5);
        let a = FactoredMgf::new(30).eval(&t, &ctx).unwrap();
        let b = u_recursive(30, &t, &ctx).unwrap();
        assert!(rel_diff(&ctx, &a, &b) < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let ctx = RealCtx::new(128).unwrap();
        let one = ctx.from_f64(1.0);
        assert!(matches!(
            FactoredMgf::new(3).eval(&one, &ctx),
            Err(Error::Domain(_))
        ));
        assert!(matches!(u_recursive(3, &one, &ctx), Err(Error::Domain(_))));
        let big = ctx.from_f64(2.5);
        assert!(FactoredMgf::new(3).eval(&big, &ctx).is_err());
    }

    #[test]
    fn eval_at_zero_is_zero() {
        let ctx = RealCtx::new(128).unwrap();
        let z = ctx.from_u64(0);
        assert!(FactoredMgf::new(4).eval(&z, &ctx).unwrap().is_zero());
    }
}
