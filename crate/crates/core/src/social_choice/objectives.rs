use crate::error::{Error, Result};
use crate::model::{Facility, FullMetric};
use crate::scalar::{cmp_scalar, Scalar};

pub fn evaluate_sum_cost<T: Scalar>(facility: Facility, d: &FullMetric<T>) -> T {
    (0..d.num_agents()).fold(T::zero(), |acc, i| acc + d.get(i, facility).clone())
}

/// 1-based rank `k = min(floor(alpha * n) + 1, n)` of the order statistic
/// used as the alpha-percentile. For alpha = 1/2 this is the middle value for
/// odd `n` and the `(n/2 + 1)`-th smallest for even `n`.
pub fn percentile_rank(n: usize, alpha: f64) -> Result<usize> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::PercentileOutOfRange(alpha));
    }
    // nudge so that e.g. 0.6 * 5 floors to 3 despite binary rounding
    let floor = (alpha * n as f64 + 1e-9).floor() as usize;
    Ok((floor + 1).min(n).max(1))
}

/// `k`-th smallest value (1-based).
pub fn order_statistic<T: Scalar>(values: &[T], k: usize) -> T {
    let mut sorted = values.to_vec();
    sorted.sort_by(cmp_scalar);
    sorted[k - 1].clone()
}

pub fn evaluate_percentile_cost<T: Scalar>(facility: Facility, d: &FullMetric<T>, alpha: f64) -> Result<T> {
    let n = d.num_agents();
    if n == 0 {
        return Err(Error::Dimension("percentile cost needs at least one agent".into()));
    }
    let k = percentile_rank(n, alpha)?;
    Ok(order_statistic(&d.column(facility), k))
}
