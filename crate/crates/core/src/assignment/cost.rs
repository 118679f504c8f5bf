use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::Facility;
use crate::scalar::{max_of, Scalar};

/// How the vector of agent distances is aggregated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceCost {
    Sum,
    Max,
}

impl DistanceCost {
    pub fn evaluate<T: Scalar>(self, s: &[T]) -> T {
        match self {
            DistanceCost::Sum => s.iter().fold(T::zero(), |acc, v| acc + v.clone()),
            DistanceCost::Max => s.iter().fold(T::zero(), |acc, v| max_of(acc, v.clone())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DistanceCost::Sum => "sum",
            DistanceCost::Max => "max",
        }
    }
}

impl fmt::Display for DistanceCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceCost {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(DistanceCost::Sum),
            "max" => Ok(DistanceCost::Max),
            "median" => Err(Error::NotSubadditive("median".into())),
            other if other.starts_with("percentile") => Err(Error::NotSubadditive(other.into())),
            other => Err(Error::Unknown {
                kind: "distance cost",
                name: other.into(),
            }),
        }
    }
}

/// Charged once when agents `a` and `b` share a facility.
#[derive(Clone, Debug, PartialEq)]
pub struct CoassignPenalty<T> {
    pub a: usize,
    pub b: usize,
    pub cost: T,
}

/// Metric-independent part of the cost: opening costs of every facility that
/// receives an agent, plus co-assignment penalties.
#[derive(Clone, Debug, PartialEq)]
pub struct FacilityCost<T> {
    pub opening: Vec<T>,
    pub penalties: Vec<CoassignPenalty<T>>,
}

impl<T: Scalar> FacilityCost<T> {
    pub fn zero(m: usize) -> Self {
        Self {
            opening: vec![T::zero(); m],
            penalties: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.opening.iter().all(Zero::is_zero) && self.penalties.iter().all(|p| p.cost.is_zero())
    }

    pub fn evaluate(&self, x: &[Facility]) -> T {
        let mut used = vec![false; self.opening.len()];
        for f in x {
            used[f.0] = true;
        }
        let opening = used
            .iter()
            .zip(&self.opening)
            .filter(|(u, _)| **u)
            .fold(T::zero(), |acc, (_, c)| acc + c.clone());
        self.penalties
            .iter()
            .filter(|p| x[p.a] == x[p.b])
            .fold(opening, |acc, p| acc + p.cost.clone())
    }

    fn validate(&self, n: usize, m: usize) -> Result<()> {
        if self.opening.len() != m {
            return Err(Error::Dimension(format!(
                "{} opening costs for {m} facilities",
                self.opening.len()
            )));
        }
        if self.opening.iter().any(|c| c.is_negative()) {
            return Err(Error::OutOfRange("negative opening cost".into()));
        }
        for p in &self.penalties {
            if p.a >= n || p.b >= n || p.a == p.b {
                return Err(Error::OutOfRange(format!("penalty pair ({}, {})", p.a, p.b)));
            }
            if p.cost.is_negative() {
                return Err(Error::OutOfRange("negative co-assignment penalty".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostSpec<T> {
    pub distance: DistanceCost,
    pub facility: FacilityCost<T>,
}

impl<T: Scalar> CostSpec<T> {
    pub fn new(distance: DistanceCost, facility: FacilityCost<T>) -> Self {
        Self { distance, facility }
    }

    /// `c_d(s) + c_f(x)`.
    pub fn total(&self, x: &[Facility], s: &[T]) -> T {
        self.distance.evaluate(s) + self.facility.evaluate(x)
    }

    pub(crate) fn validate(&self, n: usize, m: usize) -> Result<()> {
        self.facility.validate(n, m)
    }
}
