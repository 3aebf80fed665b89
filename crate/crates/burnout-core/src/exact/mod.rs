//! Exact and multi-precision computation of the burnout-interval laws.
//!
//! The moment generating function of the interval at site n has the closed
//! product form u_n(t) = t * prod_k (k - t)^(e_k) with exact integer
//! exponents e_k, and everything downstream (means, second moments, the
//! alternating log sums and the a(n, m) family) is an alternating binomial
//! sum over those exponents. Alternating sums of this kind cancel about n
//! bits, so the evaluation paths here run at n + guard bits and error out
//! rather than degrade.

mod anm;
mod aseries;
mod factored;
mod harmonic;
mod moments;

pub use anm::{
    a_nm, a_nm_alternating, a_nm_asymptotic, a_nm_nested, a_nm_nested_f64, AnmMethod, AnmValue,
};
pub use aseries::{a_limit_gap, a_n, a_n_alternating, a_n_integral, AnMethod};
pub use factored::{u_recursive, FactoredMgf};
pub use harmonic::{harmonic, harmonic_asymptotic};
pub use moments::{mean_tau, second_moment_tau, variance_tau};

/// Guard bits added on top of the n-bit cancellation loss.
pub(crate) const GUARD_BITS: usize = 64;

/// Working precision for an alternating sum of order n at caller precision.
pub(crate) fn working_bits(order: usize, bits: usize) -> usize {
    bits.max(order + GUARD_BITS) + 32
}
