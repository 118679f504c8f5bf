//! Worst-case distortion over every metric consistent with the rankings and
//! the facility distances.
//!
//! Additive objectives reduce to one linear-fractional program per competing
//! alternative, because `c(x) / min c(x') = max c(x) / c(x')`. Percentile
//! objectives decompose over the agent realising the winner's order statistic.

mod assignment;
mod percentile;
mod ratio;
mod sample;
mod sum;

pub use assignment::{audit_additive_assignment, realized_assignment_distortion, MAX_AUDIT_ALTERNATIVES};
pub use percentile::{audit_percentile_social_choice, realized_percentile_distortion, sampled_percentile_lower_bound};
pub use sample::{sample_consistent_metric, sampled_sum_lower_bound};
pub use sum::{audit_sum_social_choice, realized_sum_distortion};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances, FullMetric};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Distortion<T> {
    Finite(T),
    Unbounded,
}

impl<T: Scalar> Distortion<T> {
    /// `num / den` with `0/0 = 1` and `x/0 = inf` for positive `x`.
    pub fn ratio(num: T, den: T) -> Self {
        if den.is_zero() {
            if num.is_zero() {
                Distortion::Finite(T::one())
            } else {
                Distortion::Unbounded
            }
        } else {
            Distortion::Finite(num / den)
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distortion::Finite(v) => v.to_f64_lossy(),
            Distortion::Unbounded => f64::INFINITY,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Distortion::Unbounded)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Distortion::Finite(v) => Some(v),
            Distortion::Unbounded => None,
        }
    }

    pub fn at_least_one(self) -> Self {
        match self {
            Distortion::Finite(v) if v < T::one() => Distortion::Finite(T::one()),
            other => other,
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Distortion<U> {
        match self {
            Distortion::Finite(v) => Distortion::Finite(f(v)),
            Distortion::Unbounded => Distortion::Unbounded,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distortion::Unbounded, Distortion::Unbounded) => Ordering::Equal,
            (Distortion::Unbounded, _) => Ordering::Greater,
            (_, Distortion::Unbounded) => Ordering::Less,
            (Distortion::Finite(a), Distortion::Finite(b)) => crate::scalar::cmp_scalar(a, b),
        }
    }
}

impl<T: Scalar> fmt::Display for Distortion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distortion::Finite(v) => write!(f, "{v}"),
            Distortion::Unbounded => f.write_str("inf"),
        }
    }
}

/// Social cost being compared.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Objective {
    Sum,
    /// `alpha`-percentile of the agents' distances; `0.5` is the median and
    /// `1.0` the maximum.
    Percentile(f64),
}

impl Objective {
    pub fn name(&self) -> String {
        match self {
            Objective::Sum => "sum".into(),
            Objective::Percentile(a) if *a == 0.5 => "median".into(),
            Objective::Percentile(a) => format!("percentile:{a}"),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Objective::Sum),
            "median" => Ok(Objective::Percentile(0.5)),
            "max" => Ok(Objective::Percentile(1.0)),
            _ => {
                let alpha = s
                    .strip_prefix("percentile:")
                    .and_then(|a| a.parse::<f64>().ok())
                    .ok_or_else(|| Error::Unknown {
                        kind: "objective",
                        name: s.into(),
                    })?;
                if !(0.0..=1.0).contains(&alpha) {
                    return Err(Error::PercentileOutOfRange(alpha));
                }
                Ok(Objective::Percentile(alpha))
            }
        }
    }
}

/// What the audited outcome is compared against.
#[derive(Clone, Debug, PartialEq)]
pub enum Alternative {
    Facility(Facility),
    Assignment(Assignment),
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alternative::Facility(x) => write!(f, "{x}"),
            Alternative::Assignment(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlternativeAudit<T> {
    pub alternative: Alternative,
    /// Supremum of the cost ratio against this alternative alone.
    pub value: Distortion<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport<T> {
    pub objective: Objective,
    /// Worst-case ratio, never below 1.
    pub value: Distortion<T>,
    /// Consistent metric on which the outcome's ratio to the best alternative
    /// equals `value`.
    pub witness: FullMetric<T>,
    /// Whether `value` is the exact supremum rather than a lower bound.
    pub exact: bool,
    pub worst: Option<Alternative>,
    pub breakdown: Vec<AlternativeAudit<T>>,
}

impl<T: Scalar> AuditReport<T> {
    /// Folds per-alternative results into a report. Each candidate carries the
    /// witness for its own value.
    pub(crate) fn assemble(
        objective: Objective,
        exact: bool,
        fallback: FullMetric<T>,
        candidates: Vec<(Alternative, Distortion<T>, Option<FullMetric<T>>)>,
    ) -> Self {
        let mut value = Distortion::Finite(T::one());
        let mut witness = fallback;
        let mut worst = None;
        let mut breakdown = Vec::with_capacity(candidates.len());
        for (alternative, v, w) in candidates {
            if v.cmp_value(&value) == Ordering::Greater {
                if let Some(w) = w {
                    value = v.clone();
                    witness = w;
                    worst = Some(alternative.clone());
                }
            }
            breakdown.push(AlternativeAudit { alternative, value: v });
        }
        Self {
            objective,
            value,
            witness,
            exact,
            worst,
            breakdown,
        }
    }
}

impl<T: Scalar> AuditReport<T> {
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> AuditReport<U> {
        AuditReport {
            objective: self.objective,
            value: self.value.map(&f),
            witness: self.witness.map(&f),
            exact: self.exact,
            worst: self.worst.clone(),
            breakdown: self
                .breakdown
                .iter()
                .map(|b| AlternativeAudit {
                    alternative: b.alternative.clone(),
                    value: b.value.map(&f),
                })
                .collect(),
        }
    }
}

/// The binary value of a float scalar as an exact rational.
pub(crate) fn exact_image<T: Scalar>(v: &T) -> BigRational {
    BigRational::from_float(v.to_f64_lossy()).expect("finite scalar")
}

/// Largest ratio between nonzero input magnitudes that floating-point
/// pivoting is trusted with.
pub const MAX_FLOAT_SPREAD: f64 = 1e4;

/// Whether the nonzero magnitudes span more than [`MAX_FLOAT_SPREAD`].
pub fn badly_scaled<T: Scalar>(values: impl IntoIterator<Item = T>) -> bool {
    let (lo, hi) = values
        .into_iter()
        .map(|v| v.to_f64_lossy().abs())
        .filter(|v| *v > 0.0)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi > lo * MAX_FLOAT_SPREAD
}

/// Runs a floating-point audit, or its exact twin rounded back when the input
/// is badly scaled or the recovered witness breaks down. The simplex stops on
/// absolute reduced-cost thresholds, which can settle on a suboptimal vertex
/// once magnitudes span many orders.
pub(crate) fn audit_in<T: Scalar>(
    scale: impl IntoIterator<Item = T>,
    float: impl FnOnce() -> Result<AuditReport<T>>,
    exact: impl FnOnce() -> Result<AuditReport<BigRational>>,
) -> Result<AuditReport<T>> {
    if T::is_exact() {
        return float();
    }
    let round = |r: AuditReport<BigRational>| r.map(|v| T::of(v.to_f64_lossy()));
    if badly_scaled(scale) {
        return exact().map(round);
    }
    match float() {
        Err(Error::LinearProgram(_)) => exact().map(round),
        r => r,
    }
}

/// Every agent placed on the given facility: `d(i, F) = l(site_i, F)`.
pub(crate) fn agents_at_sites<T: Scalar>(sites: &[Facility], l: &FacilityDistances<T>) -> FullMetric<T> {
    let rows = sites
        .iter()
        .map(|&s| l.facilities().map(|f| l.get(s, f).clone()).collect())
        .collect();
    FullMetric::unchecked(rows, l.clone()).expect("rows have one entry per facility")
}

/// Distances `y / tau`, with agents reading their row from `block_of[i]`.
pub(crate) fn scaled_rows<T: Scalar>(y: &[T], tau: &T, m: usize, block_of: &[usize]) -> Vec<Vec<T>> {
    block_of
        .iter()
        .map(|&b| y[b * m..(b + 1) * m].iter().map(|v| v.clone() / tau.clone()).collect())
        .collect()
}

pub(crate) fn witness_metric<T: Scalar>(rows: Vec<Vec<T>>, l: &FacilityDistances<T>) -> Result<FullMetric<T>> {
    FullMetric::new(rows, l.clone())
        .map_err(|e| Error::LinearProgram(format!("recovered witness is not a metric: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_conventions() {
        assert_eq!(Distortion::ratio(0.0, 0.0), Distortion::Finite(1.0));
        assert_eq!(Distortion::ratio(2.0, 0.0), Distortion::<f64>::Unbounded);
        assert_eq!(Distortion::ratio(3.0, 2.0), Distortion::Finite(1.5));
        assert_eq!(Distortion::Finite(0.5).at_least_one(), Distortion::Finite(1.0));
        assert!(Distortion::<f64>::Unbounded
            .cmp_value(&Distortion::Finite(1e300))
            .is_gt());
    }

    #[test]
    fn spread_ignores_zeros() {
        assert!(!badly_scaled([0.0, 1.0, 2.0, 9999.0]));
        assert!(badly_scaled([0.0, 1e-3, 20.0]));
        assert!(!badly_scaled(Vec::<f64>::new()));
    }

    #[test]
    fn objective_names() {
        assert_eq!("median".parse::<Objective>().unwrap(), Objective::Percentile(0.5));
        assert_eq!(
            "percentile:0.75".parse::<Objective>().unwrap(),
            Objective::Percentile(0.75)
        );
        assert_eq!("max".parse::<Objective>().unwrap(), Objective::Percentile(1.0));
        assert!("percentile:2".parse::<Objective>().is_err());
        assert!("mean".parse::<Objective>().is_err());
        assert_eq!(Objective::Percentile(0.5).to_string(), "median");
    }
}
