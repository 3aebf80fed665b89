//! Shared mathematical constants.
//!
//! Euler's constant and the zeta values are computed once by Euler-Maclaurin
//! summation and cached; the asymptotic formulas elsewhere take them as
//! inputs rather than as inline literals.

use std::sync::OnceLock;

/// Largest zeta index kept in the cache.
pub const ZETA_MAX: usize = 128;

/// Euler's constant, gamma = lim (H_n - log n).
///
/// Euler-Maclaurin at N = 100: the truncated correction series leaves an
/// error of order 1/(132 N^10), far below f64 resolution.
pub fn euler_gamma() -> f64 {
    static GAMMA: OnceLock<f64> = OnceLock::new();
    *GAMMA.get_or_init(|| {
        let n = 100.0_f64;
        let mut h = 0.0;
        for k in (1..=100u32).rev() {
            h += 1.0 / f64::from(k);
        }
        h - n.ln() - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n.powi(4))
            + 1.0 / (252.0 * n.powi(6))
            - 1.0 / (240.0 * n.powi(8))
    })
}

/// e^gamma, the scale of the limiting mean burnout interval.
pub fn exp_gamma() -> f64 {
    euler_gamma().exp()
}

/// Riemann zeta(m) for m >= 2.
///
/// Direct sum to N = 64 plus the Euler-Maclaurin tail
/// N^(1-m)/(m-1) - N^(-m)/2 + m N^(-m-1)/12 - m(m+1)(m+2) N^(-m-3)/720;
/// the first omitted term is O(N^(-m-5)).
pub fn zeta(m: usize) -> f64 {
    assert!(m >= 2, "zeta(m) requires m >= 2");
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut v = vec![0.0; ZETA_MAX + 1];
        for (idx, slot) in v.iter_mut().enumerate().take(ZETA_MAX + 1).skip(2) {
            *slot = zeta_em(idx);
        }
        v
    });
    if m <= ZETA_MAX {
        table[m]
    } else {
        // beyond the cache zeta(m) - 1 < 2^-128
        1.0
    }
}

fn zeta_em(m: usize) -> f64 {
    let n = 64.0_f64;
    let mf = m as f64;
    let mut s = 0.0;
    for k in (1..=64u32).rev() {
        s += f64::from(k).powi(-(m as i32));
    }
    s + n.powf(1.0 - mf) / (mf - 1.0) - n.powf(-mf) / 2.0 + mf * n.powf(-mf - 1.0) / 12.0
        - mf * (mf + 1.0) * (mf + 2.0) * n.powf(-mf - 3.0) / 720.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_matches_reference() {
        assert!((euler_gamma() - 0.577_215_664_901_532_9).abs() < 1e-15);
        assert!((exp_gamma() - 1.781_072_417_990_198).abs() < 1e-14);
    }

    #[test]
    fn zeta_small_orders() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2) - pi * pi / 6.0).abs() < 1e-14);
        assert!((zeta(4) - pi.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(3) - 1.202_056_903_159_594_2).abs() < 1e-13);
    }

    #[test]
    fn zeta_large_orders_close_to_one() {
        assert!((zeta(60) - 1.0).abs() < 1e-15);
        assert_eq!(zeta(200), 1.0);
    }
}
