//! Moment generating function of the limiting normalized interval.

use crate::constants::euler_gamma;
use crate::error::{Error, Result};

/// MGF of the limit variable: 1 + s * exp(gamma + sum_m s^m / (m * m!)).
///
/// Expanding exp(Ei(s)) = e^gamma |s| exp(sum ...) shows the closed form
/// 1 + exp(Ei(s)) holds verbatim for s > 0, while for s < 0 the integration
/// constant multiplies the signed argument, giving 1 - exp(Ei(s)). Writing
/// the factor as s * e^gamma * exp(series) covers both signs and keeps the
/// two constraints an MGF must satisfy: values below 1 for s < 0 and slope
/// e^gamma (the limit mean) at the origin.
pub fn limit_mgf(s: f64) -> Result<f64> {
    if s >= 1.0 {
        return Err(Error::Domain(format!(
            "limit MGF defined for s < 1, got {s}"
        )));
    }
    if s == 0.0 {
        return Ok(1.0);
    }
    let mut series = 0.0_f64;
    let mut power = 1.0_f64; // s^m / m!
    for m in 1..=200 {
        power *= s / m as f64;
        let term = power / m as f64;
        series += term;
        if term.abs() < 1e-17 * series.abs().max(1.0) {
            break;
        }
    }
    Ok(1.0 + s * (euler_gamma() + series).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::exp_gamma;
    use crate::special::expint_e1;

    #[test]
    fn normalized_at_zero() {
        assert_eq!(limit_mgf(0.0).unwrap(), 1.0);
    }

    #[test]
    fn domain_error_beyond_one() {
        assert!(limit_mgf(1.0).is_err());
        assert!(limit_mgf(3.0).is_err());
    }

    #[test]
    fn negative_branch_matches_e1_form() {
        // at s = -z the MGF equals 1 - exp(-E1(z))
        for z in [0.25, 1.0, 2.5] {
            let lhs = limit_mgf(-z).unwrap();
            let rhs = 1.0 - (-expint_e1(z).unwrap()).exp();
            assert!((lhs - rhs).abs() < 1e-13, "z = {z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn mgf_below_one_for_negative_s() {
        for s in [-3.0, -1.0, -0.01] {
            let v = limit_mgf(s).unwrap();
            assert!(v > 0.0 && v < 1.0, "s = {s}: {v}");
        }
    }

    #[test]
    fn slope_at_zero_is_exp_gamma() {
        // finite differences from the left: the mean of the limit law
        let h = 1e-7;
        let slope = (1.0 - limit_mgf(-h).unwrap()) / h;
        assert!(
            (slope - exp_gamma()).abs() < 1e-4,
            "slope {slope} vs {}",
            exp_gamma()
        );
    }
}
