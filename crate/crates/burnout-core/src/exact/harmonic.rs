//! Generalized harmonic numbers, exact and asymptotic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::constants::{euler_gamma, zeta};
use crate::error::{Error, Result};

/// Exact H_{n,m} = sum_{k=1}^n 1/k^m.
pub fn harmonic(n: usize, m: usize) -> Result<BigRational> {
    if n == 0 || m == 0 {
        return Err(Error::Param(
            "harmonic(n, m) requires n >= 1, m >= 1".into(),
        ));
    }
    if n > 10_000 || m > 16 {
        return Err(Error::Budget(format!(
            "exact harmonic limited to n <= 10000, m <= 16; got ({n}, {m})"
        )));
    }
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += BigRational::new(BigInt::from(1), BigInt::from(k).pow(m as u32));
    }
    Ok(acc)
}

/// Asymptotic approximation: gamma + log n + 1/(2n) for m = 1, and
/// zeta(m) - 1/((m-1) n^(m-1)) for m >= 2.
pub fn harmonic_asymptotic(n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::Param(
            "harmonic(n, m) requires n >= 1, m >= 1".into(),
        ));
    }
    let nf = n as f64;
    Ok(if m == 1 {
        euler_gamma() + nf.ln() + 0.5 / nf
    } else {
        zeta(m) - 1.0 / ((m as f64 - 1.0) * nf.powi(m as i32 - 1))
    })
}
