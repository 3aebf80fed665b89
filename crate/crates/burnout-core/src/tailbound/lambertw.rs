//! Principal branch of the Lambert W function.

use crate::error::{Error, Result};

const INV_E: f64 = 1.0 / std::f64::consts::E;

/// W0(x) for x >= -1/e, by Halley iteration to residual 1e-14.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() || x < -INV_E - 1e-15 {
        return Err(Error::Domain(format!(
            "principal Lambert W needs x >= -1/e, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // initial guess by region: branch-point series near -1/e, log asymptote
    // for large x, the identity scale otherwise
    let mut w = if x < -0.25 {
        let p = (2.0 * (std::f64::consts::E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else if x > std::f64::consts::E {
        let l = x.ln();
        l - l.ln()
    } else {
        // one Newton step from w = 0 lands at x; good enough in [-1/4, e]
        x / (1.0 + x).max(0.25)
    };
    for _ in 0..60 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= 1e-14 * x.abs().max(1.0) {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        w -= f / denom;
    }
    let residual = w * w.exp() - x;
    if residual.abs() <= 1e-12 * x.abs().max(1.0) {
        Ok(w)
    } else {
        Err(Error::Solver(format!(
            "Lambert W did not converge at x = {x}, residual {residual}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds_across_the_domain() {
        for &x in &[-0.367, -0.3, -0.1, -1e-6, 1e-6, 0.5, 1.0, 5.0, 100.0, 1e8] {
            let w = lambert_w0(x).unwrap();
            assert!(
                (w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0),
                "x = {x}, w = {w}"
            );
        }
    }

    #[test]
    fn known_values() {
        // W(1) is the omega constant, W(e) = 1
        assert!((lambert_w0(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-13);
        assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn domain_guard() {
        assert!(lambert_w0(-0.4).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
    }
}
