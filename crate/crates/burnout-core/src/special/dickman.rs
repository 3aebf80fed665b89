//! The Dickman function rho, its density, and the GD(1) distribution
//! function, on a fixed grid built interval by interval.
//!
//! rho solves x rho'(x) = -rho(x - 1) with rho = 1 on [0, 1]; here it is the
//! survival function of the limiting normalized burnout interval. Each unit
//! interval [k, k+1] is integrated with 4-point Gauss steps of
//! rho(x) = rho(x0) - integral of rho(t - 1)/t, reading the already-built
//! table through local cubics; closed forms seed [0, 2]. Interpolation
//! stencils never cross integer abscissae, where rho has derivative kinks.

use std::sync::OnceLock;

use crate::constants::euler_gamma;
use crate::error::{Error, Result};

// 4-point Gauss-Legendre rule on [-1, 1].
const GL4_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_W: [f64; 4] = [
    0.347_854_845_137_453_85,
    0.652_145_154_862_546_2,
    0.652_145_154_862_546_2,
    0.347_854_845_137_453_85,
];

fn gl4<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    GL4_X
        .iter()
        .zip(GL4_W.iter())
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Piecewise value over the raw node array: closed forms on [0, 2], local
/// cubic beyond.
fn interp_at(values: &[f64], spu: usize, units: usize, x: f64) -> f64 {
    if x <= 1.0 {
        return 1.0;
    }
    if x <= 2.0 {
        return 1.0 - x.ln();
    }
    cubic_at(values, spu, units, x).0
}

/// Cubic Lagrange value and derivative from the 4 nearest nodes inside the
/// unit interval containing x.
fn cubic_at(values: &[f64], spu: usize, units: usize, x: f64) -> (f64, f64) {
    let h = 1.0 / spu as f64;
    let unit = (x.floor() as usize).min(units - 1);
    let lo = unit * spu;
    let hi = lo + spu; // node range of this unit interval is lo..=hi
    let j = ((x / h).floor() as usize).clamp(lo, hi - 1);
    let s0 = j.saturating_sub(1).clamp(lo, hi - 3);
    let xi = (x - s0 as f64 * h) / h;
    let y = &values[s0..s0 + 4];
    let l0 = -(xi - 1.0) * (xi - 2.0) * (xi - 3.0) / 6.0;
    let l1 = xi * (xi - 2.0) * (xi - 3.0) / 2.0;
    let l2 = -xi * (xi - 1.0) * (xi - 3.0) / 2.0;
    let l3 = xi * (xi - 1.0) * (xi - 2.0) / 6.0;
    let v = y[0] * l0 + y[1] * l1 + y[2] * l2 + y[3] * l3;
    let d0 = -((xi - 2.0) * (xi - 3.0) + (xi - 1.0) * (xi - 3.0) + (xi - 1.0) * (xi - 2.0)) / 6.0;
    let d1 = ((xi - 2.0) * (xi - 3.0) + xi * (xi - 3.0) + xi * (xi - 2.0)) / 2.0;
    let d2 = -((xi - 1.0) * (xi - 3.0) + xi * (xi - 3.0) + xi * (xi - 1.0)) / 2.0;
    let d3 = ((xi - 1.0) * (xi - 2.0) + xi * (xi - 2.0) + xi * (xi - 1.0)) / 6.0;
    let d = (y[0] * d0 + y[1] * d1 + y[2] * d2 + y[3] * d3) / h;
    (v, d)
}

/// Grid representation of rho with per-interval cubic interpolation.
#[derive(Debug, Clone)]
pub struct DickmanTable {
    steps_per_unit: usize,
    units: usize,
    values: Vec<f64>,
    cum: Vec<f64>,
}

impl DickmanTable {
    /// Builds the table on [0, ceil(x_max)] with grid step `h`.
    ///
    /// `1/h` must be an integer (so stencils align with the integer kinks)
    /// of at least 8 steps per unit.
    pub fn build(x_max: f64, h: f64) -> Result<Self> {
        if x_max < 1.0 || !x_max.is_finite() {
            return Err(Error::Param(format!("x_max must be >= 1, got {x_max}")));
        }
        if h <= 0.0 || h.is_nan() || (1.0 / h).fract().abs() > 1e-9 {
            return Err(Error::Param(format!(
                "step must be a unit fraction 1/k, got {h}"
            )));
        }
        let spu = (1.0 / h).round() as usize;
        if spu < 8 {
            return Err(Error::Param(format!(
                "need at least 8 steps per unit, got {spu}"
            )));
        }
        let units = x_max.ceil() as usize;
        if units * spu > 1 << 26 {
            return Err(Error::Budget(format!(
                "table of {} nodes exceeds the build budget",
                units * spu
            )));
        }
        let hf = 1.0 / spu as f64;
        let mut values = vec![1.0; units * spu + 1];
        // closed form 1 - log x on [1, 2]
        if units >= 2 {
            for (j, slot) in values.iter_mut().enumerate().take(2 * spu + 1).skip(spu) {
                *slot = 1.0 - (j as f64 * hf).ln();
            }
        }
        for unit in 2..units {
            for j in 0..spu {
                let g = unit * spu + j;
                let x0 = g as f64 * hf;
                let step = gl4(|t| interp_at(&values, spu, units, t - 1.0) / t, x0, x0 + hf);
                values[g + 1] = values[g] - step;
            }
        }
        // cumulative integral of rho at the nodes
        let mut cum = Vec::with_capacity(values.len());
        cum.push(0.0);
        for g in 0..units * spu {
            let x0 = g as f64 * hf;
            let step = gl4(|t| interp_at(&values, spu, units, t), x0, x0 + hf);
            cum.push(cum[g] + step);
        }
        Ok(Self {
            steps_per_unit: spu,
            units,
            values,
            cum,
        })
    }

    pub fn step(&self) -> f64 {
        1.0 / self.steps_per_unit as f64
    }

    pub fn x_max(&self) -> f64 {
        self.units as f64
    }

    /// Integral of rho over the whole table range.
    pub fn total_mass(&self) -> f64 {
        *self.cum.last().expect("cum never empty")
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!("rho defined for x >= 0, got {x}")));
        }
        if x > self.x_max() {
            return Err(Error::TableTooShort {
                x,
                x_max: self.x_max(),
            });
        }
        Ok(())
    }

    /// rho(x).
    pub fn rho(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        Ok(interp_at(&self.values, self.steps_per_unit, self.units, x))
    }

    /// Density of the limit law: f(x) = rho(x - 1) / x for x > 1, else 0.
    pub fn density(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::Domain("density of NaN".into()));
        }
        if x <= 1.0 {
            return Ok(0.0);
        }
        self.check_range(x - 1.0)?;
        Ok(interp_at(&self.values, self.steps_per_unit, self.units, x - 1.0) / x)
    }

    /// GD(1) distribution function e^-gamma * integral of rho over [0, x].
    pub fn gd1_cdf(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        let spu = self.steps_per_unit as f64;
        let idx = ((x * spu).floor() as usize).min(self.values.len() - 2);
        let x0 = idx as f64 / spu;
        let partial = if x > x0 {
            gl4(
                |t| interp_at(&self.values, self.steps_per_unit, self.units, t),
                x0,
                x,
            )
        } else {
            0.0
        };
        Ok(((self.cum[idx] + partial) * (-euler_gamma()).exp()).clamp(0.0, 1.0))
    }

    /// Derivative of the interpolant; the ODE-residual check reads this.
    pub fn rho_prime(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        if x < 1.0 {
            return Ok(0.0);
        }
        if x > 1.0 && x <= 2.0 {
            return Ok(-1.0 / x);
        }
        Ok(cubic_at(&self.values, self.steps_per_unit, self.units, x).1)
    }
}

/// Shared table on [0, 16] with the default step 1/1024.
pub fn shared_table() -> &'static DickmanTable {
    static TABLE: OnceLock<DickmanTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        DickmanTable::build(16.0, 1.0 / 1024.0).expect("default table parameters are valid")
    })
}

/// rho(x) from the shared table.
pub fn dickman_rho(x: f64) -> Result<f64> {
    shared_table().rho(x)
}

/// Limit-law density from the shared table.
pub fn dickman_density(x: f64) -> Result<f64> {
    shared_table().density(x)
}

/// GD(1) distribution function from the shared table.
pub fn gd1_cdf(x: f64) -> Result<f64> {
    shared_table().gd1_cdf(x)
}
