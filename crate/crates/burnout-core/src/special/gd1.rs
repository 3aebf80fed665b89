//! Sampler for the generalized Dickman distribution GD(1), the limit law of
//! residual waiting times: U_1 + U_1 U_2 + U_1 U_2 U_3 + ... with i.i.d.
//! uniform factors.

use rand::Rng;

use crate::error::{Error, Result};

/// Truncation policy for the product series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gd1Spec {
    epsilon: f64,
}

impl Default for Gd1Spec {
    fn default() -> Self {
        Self { epsilon: 1e-9 }
    }
}

impl Gd1Spec {
    /// The series stops once the running product drops below `epsilon`;
    /// the truncation bias is at most 2 epsilon in expectation.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Param(format!(
                "GD(1) truncation threshold must be in (0, 1), got {epsilon}"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// One draw of the truncated product series. The product halves per step
    /// in expectation, so the stopping index has a geometric-like tail.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut product = 1.0_f64;
        let mut sum = 0.0_f64;
        loop {
            product *= rng.random::<f64>();
            sum += product;
            if product < self.epsilon {
                return sum;
            }
        }
    }
}

/// One GD(1) draw with truncation threshold `epsilon`.
pub fn gd1_sample<R: Rng + ?Sized>(rng: &mut R, epsilon: f64) -> Result<f64> {
    Ok(Gd1Spec::new(epsilon)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngHandle;
    use crate::stats::SampleSummary;

    #[test]
    fn spec_validation() {
        assert!(Gd1Spec::new(0.0).is_err());
        assert!(Gd1Spec::new(1.0).is_err());
        assert!(Gd1Spec::new(1e-9).is_ok());
    }

    #[test]
    fn samples_positive() {
        let spec = Gd1Spec::default();
        let mut rng = RngHandle::new(13, 0).stage_rng(0);
        for _ in 0..10_000 {
            assert!(spec.sample(&mut rng) > 0.0);
        }
    }

    #[test]
    fn mean_is_one() {
        // E sum prod U_j = sum 2^-k = 1
        let spec = Gd1Spec::default();
        let mut rng = RngHandle::new(14, 0).stage_rng(0);
        let xs: Vec<f64> = (0..100_000).map(|_| spec.sample(&mut rng)).collect();
        let s = SampleSummary::new(xs).unwrap();
        assert!(
            (s.mean() - 1.0).abs() < 0.01,
            "mean {} +- {}",
            s.mean(),
            s.std_error()
        );
    }
}
