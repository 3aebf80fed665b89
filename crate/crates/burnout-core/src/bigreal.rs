//! Multi-precision real arithmetic context.
//!
//! Thin wrapper over `astro_float::BigFloat` that pins one working precision
//! and rounding mode per context and keeps the shared constants cache in one
//! place. Alternating binomial sums lose about n bits to cancellation, so the
//! exact-computation paths create contexts sized n + guard bits.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Hard cap on working precision; requests beyond it error out rather than
/// running unbounded.
pub const MAX_PRECISION_BITS: usize = 1 << 22;

/// Precision context. All operations round to the context precision.
pub struct RealCtx {
    prec: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl RealCtx {
    /// Context with at least 64 bits of working precision.
    pub fn new(bits: usize) -> Result<Self> {
        if bits > MAX_PRECISION_BITS {
            return Err(Error::Precision {
                required: bits,
                cap: MAX_PRECISION_BITS,
            });
        }
        let cc = Consts::new().map_err(|e| Error::Domain(format!("constants cache: {e:?}")))?;
        Ok(Self {
            prec: bits.max(64),
            rm: RoundingMode::ToEven,
            cc,
        })
    }

    pub fn bits(&self) -> usize {
        self.prec
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.prec)
    }

    pub fn from_u64(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.prec)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    /// Exact conversion of a big integer (value = mantissa * 2^(e - 64*len)).
    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        let (sign, digits) = v.clone().into_parts();
        let words: Vec<u64> = digits.to_u64_digits();
        if words.is_empty() {
            return BigFloat::new(self.prec);
        }
        let s = match sign {
            num_bigint::Sign::Minus => Sign::Neg,
            _ => Sign::Pos,
        };
        let e = (words.len() * 64) as astro_float::Exponent;
        BigFloat::from_words(&words, s, e)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    pub fn neg(&self, a: &BigFloat) -> BigFloat {
        a.neg()
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, self.rm, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, self.rm, &mut self.cc)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, self.rm)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.prec, self.rm)
    }

    /// Total order; NaNs are rejected upstream.
    pub fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
        match a.cmp(b) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => Ordering::Equal,
        }
    }

    pub fn to_string(&mut self, a: &BigFloat) -> String {
        a.format(Radix::Dec, self.rm, &mut self.cc)
            .unwrap_or_else(|_| "nan".to_string())
    }
}

/// Lossy conversion to f64 from the top 128 mantissa bits.
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((m, _n, s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let hi = m[m.len() - 1] as f64;
    let lo = if m.len() > 1 {
        m[m.len() - 2] as f64
    } else {
        0.0
    };
    let frac = hi / 2f64.powi(64) + lo / 2f64.powi(128);
    let v = frac * 2f64.powi(e);
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

/// |a/b - 1|, as f64. Infinite when b is zero and a is not.
pub fn rel_diff(ctx: &RealCtx, a: &BigFloat, b: &BigFloat) -> f64 {
    if b.is_zero() {
        return if a.is_zero() { 0.0 } else { f64::INFINITY };
    }
    let r = ctx.div(&ctx.sub(a, b), b);
    to_f64(&r).abs()
}

/// Gauss-Legendre nodes and weights on [-1, 1] at context precision.
///
/// Newton refinement of f64 initial guesses against the Legendre recurrence;
/// used by the multi-precision quadrature path.
pub fn gauss_legendre(ctx: &mut RealCtx, n: usize) -> Vec<(BigFloat, BigFloat)> {
    let one = ctx.from_u64(1);
    let two = ctx.from_u64(2);
    let nf = ctx.from_u64(n as u64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-style initial guess is accurate to ~1e-3; Newton squares
        // the error, so a fixed iteration count reaches full precision.
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = ctx.from_f64(guess);
        let iters = 6 + ctx.bits() / 40;
        for _ in 0..iters {
            let (p, dp) = legendre_pair(ctx, &x, n, &one, &nf);
            let step = ctx.div(&p, &dp);
            x = ctx.sub(&x, &step);
        }
        let (_, dp) = legendre_pair(ctx, &x, n, &one, &nf);
        // w = 2 / ((1 - x^2) dp^2)
        let x2 = ctx.mul(&x, &x);
        let denom = ctx.mul(&ctx.sub(&one, &x2), &ctx.mul(&dp, &dp));
        let w = ctx.div(&two, &denom);
        out.push((x, w));
    }
    out
}

/// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_pair(
    ctx: &RealCtx,
    x: &BigFloat,
    n: usize,
    one: &BigFloat,
    nf: &BigFloat,
) -> (BigFloat, BigFloat) {
    let mut p_prev = one.clone();
    let mut p = x.clone();
    for k in 2..=n {
        let kf = ctx.from_u64(k as u64);
        let km1 = ctx.from_u64((k - 1) as u64);
        let a = ctx.from_u64((2 * k - 1) as u64);
        // p_k = ((2k-1) x p_{k-1} - (k-1) p_{k-2}) / k
        let t1 = ctx.mul(&ctx.mul(&a, x), &p);
        let t2 = ctx.mul(&km1, &p_prev);
        let next = ctx.div(&ctx.sub(&t1, &t2), &kf);
        p_prev = p;
        p = next;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let x2m1 = ctx.sub(&ctx.mul(x, x), one);
    let dp = ctx.div(&ctx.mul(nf, &ctx.sub(&ctx.mul(x, &p), &p_prev)), &x2m1);
    (p, dp)
}
