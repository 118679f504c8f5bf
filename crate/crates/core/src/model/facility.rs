use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{approx_le, Scalar};

/// Index of a facility (alternative) within its [`FacilitySet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Facility(pub usize);

impl Facility {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Facility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacilitySet {
    names: Vec<String>,
}

impl FacilitySet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidDistances("facility set is empty".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidDistances(format!("duplicate facility `{name}`")));
            }
        }
        Ok(Self { names })
    }

    /// `F1..Fm`.
    pub fn numbered(m: usize) -> Self {
        Self {
            names: (1..=m).map(|i| format!("F{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, facility: Facility) -> &str {
        &self.names[facility.0]
    }

    pub fn lookup(&self, name: &str) -> Option<Facility> {
        self.names.iter().position(|n| n == name).map(Facility)
    }

    pub fn iter(&self) -> impl Iterator<Item = Facility> {
        (0..self.names.len()).map(Facility)
    }
}

/// First property of a facility-distance matrix found to fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceViolation {
    NonzeroDiagonal { facility: Facility },
    Negative { a: Facility, b: Facility },
    Asymmetric { a: Facility, b: Facility },
    Triangle { x: Facility, y: Facility, z: Facility },
}

impl fmt::Display for DistanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonzeroDiagonal { facility } => write!(f, "l({facility},{facility}) is not zero"),
            Self::Negative { a, b } => write!(f, "l({a},{b}) is negative"),
            Self::Asymmetric { a, b } => write!(f, "l({a},{b}) differs from l({b},{a})"),
            Self::Triangle { x, y, z } => {
                write!(f, "triangle inequality fails: l({x},{z}) > l({x},{y}) + l({y},{z})")
            }
        }
    }
}

/// Known distances between facilities, stored as a dense symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FacilityDistances<T> {
    m: usize,
    values: Vec<T>,
}

impl<T: Scalar> FacilityDistances<T> {
    /// Builds the matrix without checking metric properties; see [`validate`](Self::validate).
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::Dimension("facility distance matrix is empty".into()));
        }
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::Dimension(format!(
                "row {i} of the facility distance matrix has {} entries, expected {m}",
                row.len()
            )));
        }
        Ok(Self {
            m,
            values: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds and validates in one step.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let l = Self::from_rows(rows)?;
        l.validate().map_err(|v| Error::InvalidDistances(v.to_string()))?;
        Ok(l)
    }

    /// Symmetric matrix from the strict upper triangle, row by row.
    pub fn from_upper(m: usize, upper: &[T]) -> Result<Self> {
        if upper.len() != m * (m.saturating_sub(1)) / 2 {
            return Err(Error::Dimension(format!(
                "{} upper-triangle entries given for {m} facilities",
                upper.len()
            )));
        }
        let mut rows = vec![vec![T::zero(); m]; m];
        let mut it = upper.iter();
        for a in 0..m {
            for b in a + 1..m {
                let v = it.next().expect("length checked").clone();
                rows[a][b] = v.clone();
                rows[b][a] = v;
            }
        }
        Self::new(rows)
    }

    /// Strict upper triangle, row by row.
    pub fn upper_values(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.m * self.m.saturating_sub(1) / 2);
        for a in 0..self.m {
            for b in a + 1..self.m {
                out.push(self.values[a * self.m + b].clone());
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn get(&self, a: Facility, b: Facility) -> &T {
        &self.values[a.0 * self.m + b.0]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.values.chunks(self.m).map(|c| c.to_vec()).collect()
    }

    pub fn facilities(&self) -> impl Iterator<Item = Facility> {
        (0..self.m).map(Facility)
    }

    pub fn max_distance(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| if *v > acc { v.clone() } else { acc })
    }

    pub fn scaled(&self, factor: &T) -> Self {
        Self {
            m: self.m,
            values: self.values.iter().map(|v| v.clone() * factor.clone()).collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FacilityDistances<U> {
        FacilityDistances {
            m: self.m,
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Checks zero diagonal, nonnegativity, symmetry and the triangle
    /// inequality, all within the scalar's metric tolerance, and reports the
    /// first failure in lexicographic order.
    pub fn validate(&self) -> std::result::Result<(), DistanceViolation> {
        let tol = T::metric_tolerance();
        let zero = T::zero();
        for a in self.facilities() {
            if self.get(a, a).abs() > tol {
                return Err(DistanceViolation::NonzeroDiagonal { facility: a });
            }
        }
        for a in self.facilities() {
            for b in self.facilities() {
                if !approx_le(&zero, self.get(a, b)) {
                    return Err(DistanceViolation::Negative { a, b });
                }
                if (self.get(a, b).clone() - self.get(b, a).clone()).abs() > tol {
                    return Err(DistanceViolation::Asymmetric { a, b });
                }
            }
        }
        for x in self.facilities() {
            for y in self.facilities() {
                for z in self.facilities() {
                    let via = self.get(x, y).clone() + self.get(y, z).clone();
                    if !approx_le(self.get(x, z), &via) {
                        return Err(DistanceViolation::Triangle { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Validation entry point mirroring [`FacilityDistances::validate`].
pub fn validate_facility_distances<T: Scalar>(l: &FacilityDistances<T>) -> std::result::Result<(), DistanceViolation> {
    l.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colocated_facilities_are_a_metric() {
        let l = FacilityDistances::from_rows(vec![vec![0.0; 3]; 3]).unwrap();
        assert_eq!(l.validate(), Ok(()));
    }

    #[test]
    fn long_isoceles_is_a_metric() {
        let l = FacilityDistances::from_upper(3, &[2.0, 1000.0, 1000.0]).unwrap();
        assert_eq!(*l.get(Facility(0), Facility(1)), 2.0);
    }

    #[test]
    fn broken_triangle_names_triple() {
        let l =
            FacilityDistances::from_rows(vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]]).unwrap();
        assert_eq!(
            l.validate(),
            Err(DistanceViolation::Triangle {
                x: Facility(0),
                y: Facility(1),
                z: Facility(2)
            })
        );
        assert!(FacilityDistances::new(l.rows()).is_err());
    }

    #[test]
    fn other_violations() {
        let diag = FacilityDistances::from_rows(vec![vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            diag.validate(),
            Err(DistanceViolation::NonzeroDiagonal { .. })
        ));
        let asym = FacilityDistances::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(asym.validate(), Err(DistanceViolation::Asymmetric { .. })));
        let neg = FacilityDistances::from_rows(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
        assert!(matches!(neg.validate(), Err(DistanceViolation::Negative { .. })));
    }

    #[test]
    fn tolerance_absorbs_rounding() {
        let l = FacilityDistances::from_rows(vec![
            vec![0.0, 1.0, 2.0 + 1e-12],
            vec![1.0, 0.0, 1.0],
            vec![2.0 + 1e-12, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(l.validate(), Ok(()));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            FacilityDistances::from_rows(vec![vec![0.0, 1.0], vec![1.0]]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn facility_set_rejects_duplicates() {
        assert!(FacilitySet::new(vec!["A".into(), "A".into()]).is_err());
        assert!(FacilitySet::new(vec![]).is_err());
        let set = FacilitySet::new(vec!["W".into(), "X".into()]).unwrap();
        assert_eq!(set.lookup("X"), Some(Facility(1)));
    }
}
