//! The alternating binomial power sums a(n, m).
//!
//! a(n, m) = sum_{k=1}^n C(n, k) (-1)^(k+1) / k^m equals the ordered nested
//! harmonic sum over 1 <= i_1 <= ... <= i_m <= n of 1/(i_1 ... i_m), is
//! bounded by (log n + 1)^m, and grows like log^m n / m!. The exact routes
//! run in big rationals under an explicit budget; the nested recurrence also
//! has an f64 variant for asymptotic-regime checks at large n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::constants::euler_gamma;
use crate::error::{Error, Result};

/// Budget for the exact rational routes.
const EXACT_N_MAX: usize = 60;
const EXACT_M_MAX: usize = 8;

/// Evaluation route for a(n, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnmMethod {
    /// Exact alternating binomial sum.
    Alternating,
    /// Exact nested-sum recurrence a(n, m) = sum_j a(j, m-1) / j.
    Nested,
    /// Two-term asymptotic log^m n / m! + gamma log^(m-1) n / (m-1)!.
    Asymptotic,
}

/// Value of a(n, m): exact rational or float, depending on the route.
#[derive(Debug, Clone, PartialEq)]
pub enum AnmValue {
    Exact(BigRational),
    Approx(f64),
}

impl AnmValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            AnmValue::Exact(r) => rational_to_f64(r),
            AnmValue::Approx(v) => *v,
        }
    }
}

/// Dispatches on the requested method.
pub fn a_nm(n: usize, m: usize, method: AnmMethod) -> Result<AnmValue> {
    match method {
        AnmMethod::Alternating => a_nm_alternating(n, m).map(AnmValue::Exact),
        AnmMethod::Nested => a_nm_nested(n, m).map(AnmValue::Exact),
        AnmMethod::Asymptotic => Ok(AnmValue::Approx(a_nm_asymptotic(n, m)?)),
    }
}

fn check_exact_budget(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Param("a(n, m) requires n >= 1 and m >= 1".into()));
    }
    if n > EXACT_N_MAX || m > EXACT_M_MAX {
        return Err(Error::Budget(format!(
            "exact a(n, m) limited to n <= {EXACT_N_MAX}, m <= {EXACT_M_MAX}; got ({n}, {m})"
        )));
    }
    Ok(())
}

/// Exact alternating sum sum_k C(n, k) (-1)^(k+1) / k^m.
pub fn a_nm_alternating(n: usize, m: usize) -> Result<BigRational> {
    check_exact_budget(n, m)?;
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    for k in 1..=n {
        binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k);
        let km = BigInt::from(k).pow(m as u32);
        let term = BigRational::new(binom.clone(), km);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Exact nested sum via the prefix recurrence, O(n m) rational operations.
pub fn a_nm_nested(n: usize, m: usize) -> Result<BigRational> {
    check_exact_budget(n, m)?;
    // row[j-1] = a(j, r); r = 0 row is all ones
    let mut row = vec![BigRational::one(); n];
    for _r in 1..=m {
        let mut acc = BigRational::zero();
        for (j, slot) in row.iter_mut().enumerate() {
            acc += &*slot / BigRational::from(BigInt::from(j + 1));
            *slot = acc.clone();
        }
    }
    Ok(row[n - 1].clone())
}

/// The nested recurrence in f64, for n far beyond the exact budget.
pub fn a_nm_nested_f64(n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::Param("a(n, m) requires n >= 1 and m >= 1".into()));
    }
    if m > 16 {
        return Err(Error::Budget(format!(
            "f64 nested route limited to m <= 16, got {m}"
        )));
    }
    let mut row = vec![1.0f64; n];
    for _r in 1..=m {
        let mut acc = 0.0;
        for (j, slot) in row.iter_mut().enumerate() {
            acc += *slot / (j + 1) as f64;
            *slot = acc;
        }
    }
    Ok(row[n - 1])
}

/// Two-term asymptotic expansion for fixed m as n grows.
pub fn a_nm_asymptotic(n: usize, m: usize) -> Result<f64> {
    if n < 2 || m == 0 {
        return Err(Error::Param(
            "asymptotic a(n, m) requires n >= 2, m >= 1".into(),
        ));
    }
    let l = (n as f64).ln();
    let mut mfact = 1.0;
    for i in 2..=m {
        mfact *= i as f64;
    }
    let lead = l.powi(m as i32) / mfact;
    let second = if m == 1 {
        euler_gamma()
    } else {
        euler_gamma() * l.powi(m as i32 - 1) / (mfact / m as f64)
    };
    Ok(lead + second)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
