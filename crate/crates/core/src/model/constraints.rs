use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::model::{Facility, FacilityDistances, FullMetric, PreferenceProfile};
use crate::scalar::{approx_le, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    /// `-d(i,F) <= 0`
    Nonnegative,
    /// `d(i,F) - d(i,F') <= 0` for consecutive ranks `F` above `F'`
    Chain,
    /// `d(i,F') - d(i,F) <= l(F,F')`
    Spread,
    /// `-d(i,F) - d(i,F') <= -l(F,F')`
    Reach,
}

/// One linear inequality `sum coeff * d(i, F) <= rhs` over a single agent's row.
#[derive(Clone, Debug, PartialEq)]
pub struct AgentInequality<T> {
    pub terms: Vec<(Facility, T)>,
    pub rhs: T,
    pub kind: ConstraintKind,
}

impl<T: Scalar> AgentInequality<T> {
    pub fn holds(&self, row: &[T]) -> bool {
        let lhs = self
            .terms
            .iter()
            .fold(T::zero(), |acc, (f, c)| acc + c.clone() * row[f.0].clone());
        approx_le(&lhs, &self.rhs)
    }
}

/// Linear description of the closed set of agent-to-facility distance rows
/// that agree with one agent's ranking and the facility metric.
///
/// Chains only link consecutive ranks. Given a chain `d(F) <= d(F')`, the
/// only triangle constraints not already implied are
/// `d(F') - d(F) <= l(F,F')` and `l(F,F') <= d(F) + d(F')`. Nonnegativity is
/// left to the caller, since LP variables are nonnegative anyway.
pub fn agent_constraints<T: Scalar>(
    ranking: &[Facility],
    top_only: bool,
    l: &FacilityDistances<T>,
) -> Vec<AgentInequality<T>> {
    let m = l.len();
    let mut rows = Vec::new();
    let one = T::one();
    let chain = |a: Facility, b: Facility| AgentInequality {
        terms: vec![(a, one.clone()), (b, -one.clone())],
        rhs: T::zero(),
        kind: ConstraintKind::Chain,
    };
    let spread = |near: Facility, far: Facility| AgentInequality {
        terms: vec![(far, one.clone()), (near, -one.clone())],
        rhs: l.get(near, far).clone(),
        kind: ConstraintKind::Spread,
    };
    let reach = |a: Facility, b: Facility| AgentInequality {
        terms: vec![(a, -one.clone()), (b, -one.clone())],
        rhs: -l.get(a, b).clone(),
        kind: ConstraintKind::Reach,
    };

    if top_only {
        let top = ranking[0];
        for f in (0..m).map(Facility).filter(|f| *f != top) {
            rows.push(chain(top, f));
        }
        for a in (0..m).map(Facility) {
            for b in (a.0 + 1..m).map(Facility) {
                if a == top || b == top {
                    let other = if a == top { b } else { a };
                    rows.push(spread(top, other));
                } else {
                    rows.push(spread(a, b));
                    rows.push(spread(b, a));
                }
                rows.push(reach(a, b));
            }
        }
    } else {
        for w in ranking.windows(2) {
            rows.push(chain(w[0], w[1]));
        }
        for (p, &near) in ranking.iter().enumerate() {
            for &far in &ranking[p + 1..] {
                rows.push(spread(near, far));
                rows.push(reach(near, far));
            }
        }
    }
    rows
}

/// Inequalities over the `n * m` variables `d(i,F)` (variable `i * m + F`)
/// describing every metric consistent with a profile and facility distances.
#[derive(Clone, Debug)]
pub struct ConsistencyConstraintSet<T> {
    n: usize,
    m: usize,
    rows: Vec<(usize, AgentInequality<T>)>,
}

pub fn consistency_constraints<T: Scalar>(
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
) -> Result<ConsistencyConstraintSet<T>> {
    if profile.num_facilities() != l.len() {
        return Err(Error::Dimension(format!(
            "profile ranks {} facilities but the distance matrix has {}",
            profile.num_facilities(),
            l.len()
        )));
    }
    let n = profile.num_agents();
    let m = l.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for f in l.facilities() {
            rows.push((
                i,
                AgentInequality {
                    terms: vec![(f, -T::one())],
                    rhs: T::zero(),
                    kind: ConstraintKind::Nonnegative,
                },
            ));
        }
        for row in agent_constraints(profile.ranking(i), profile.is_top_only(), l) {
            rows.push((i, row));
        }
    }
    Ok(ConsistencyConstraintSet { n, m, rows })
}

impl<T: Scalar> ConsistencyConstraintSet<T> {
    pub fn num_agents(&self) -> usize {
        self.n
    }

    pub fn num_facilities(&self) -> usize {
        self.m
    }

    pub fn num_variables(&self) -> usize {
        self.n * self.m
    }

    pub fn variable(&self, agent: usize, facility: Facility) -> usize {
        agent * self.m + facility.0
    }

    pub fn rows(&self) -> &[(usize, AgentInequality<T>)] {
        &self.rows
    }

    pub fn count(&self, kind: ConstraintKind) -> usize {
        self.rows.iter().filter(|(_, r)| r.kind == kind).count()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_satisfied_by(&self, d: &FullMetric<T>) -> bool {
        d.num_agents() == self.n
            && d.num_facilities() == self.m
            && self.rows.iter().all(|(i, r)| r.holds(d.agent_row(*i)))
    }

    /// Feasibility LP with a zero objective over all `n * m` variables.
    pub fn to_linear_program(&self) -> LinearProgram<T> {
        let mut lp = LinearProgram::new(self.num_variables());
        for (i, r) in &self.rows {
            if r.kind == ConstraintKind::Nonnegative {
                continue;
            }
            let terms = r
                .terms
                .iter()
                .map(|(f, c)| (self.variable(*i, *f), c.clone()))
                .collect();
            lp.add_constraint(terms, Relation::Le, r.rhs.clone());
        }
        lp
    }

    pub fn is_feasible(&self) -> Result<bool> {
        Ok(!matches!(self.to_linear_program().solve()?, LpOutcome::Infeasible))
    }
}

/// Every agent at distance `max l` from every facility. It satisfies every
/// ranking with ties, so the consistent set is never empty.
pub fn distant_metric<T: Scalar>(n: usize, l: &FacilityDistances<T>) -> FullMetric<T> {
    let far = l.max_distance();
    let far = if far.is_zero() { T::one() } else { far };
    FullMetric::unchecked(vec![vec![far; l.len()]; n], l.clone()).expect("shape matches")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::check_consistency;

    #[test]
    fn single_agent_two_facilities() {
        let l = FacilityDistances::from_upper(2, &[2.0]).unwrap();
        let p = PreferenceProfile::from_indices(2, &[vec![0, 1]]).unwrap();
        let set = consistency_constraints(&p, &l).unwrap();
        assert_eq!(set.count(ConstraintKind::Nonnegative), 2);
        assert_eq!(set.count(ConstraintKind::Chain), 1);
        assert_eq!(set.count(ConstraintKind::Spread) + set.count(ConstraintKind::Reach), 2);
        let ok = FullMetric::new(vec![vec![0.5, 1.5]], l.clone()).unwrap();
        assert!(set.is_satisfied_by(&ok));
        let bad = FullMetric::unchecked(vec![vec![1.5, 0.5]], l.clone()).unwrap();
        assert!(!set.is_satisfied_by(&bad));
        let short = FullMetric::unchecked(vec![vec![0.5, 0.5]], l).unwrap();
        assert!(!set.is_satisfied_by(&short));
    }

    #[test]
    fn counts_match_closed_forms() {
        let l = FacilityDistances::from_upper(4, &[1.0, 2.0, 2.0, 1.5, 1.0, 1.0]).unwrap();
        let p = PreferenceProfile::from_indices(4, &[vec![0, 1, 2, 3], vec![3, 1, 0, 2], vec![2, 0, 1, 3]]).unwrap();
        let set = consistency_constraints(&p, &l).unwrap();
        let (n, m) = (3, 4);
        assert_eq!(set.count(ConstraintKind::Chain), n * (m - 1));
        assert_eq!(
            set.count(ConstraintKind::Spread) + set.count(ConstraintKind::Reach),
            2 * n * m * (m - 1) / 2
        );
        assert_eq!(set.count(ConstraintKind::Nonnegative), n * m);
    }

    #[test]
    fn one_facility_leaves_only_nonnegativity() {
        let l = FacilityDistances::from_rows(vec![vec![0.0]]).unwrap();
        let p = PreferenceProfile::from_indices(1, &[vec![0], vec![0]]).unwrap();
        let set = consistency_constraints(&p, &l).unwrap();
        assert_eq!(set.len(), set.count(ConstraintKind::Nonnegative));
        assert!(set.is_feasible().unwrap());
    }

    #[test]
    fn distant_metric_is_always_consistent() {
        let l = FacilityDistances::from_upper(3, &[1.0, 2.0, 1.0]).unwrap();
        let p = PreferenceProfile::from_indices(3, &[vec![2, 1, 0], vec![0, 2, 1]]).unwrap();
        let d = distant_metric(2, &l);
        assert!(d.validate().is_ok());
        assert!(check_consistency(&p, &d));
        assert!(consistency_constraints(&p, &l).unwrap().is_satisfied_by(&d));
    }

    #[test]
    fn top_only_constraints() {
        let l = FacilityDistances::from_upper(3, &[1.0, 2.0, 1.0]).unwrap();
        let p = PreferenceProfile::top_only(3, vec![Facility(1)]).unwrap();
        let set = consistency_constraints(&p, &l).unwrap();
        assert_eq!(set.count(ConstraintKind::Chain), 2);
        let at_top = FullMetric::new(vec![vec![1.0, 0.0, 1.0]], l.clone()).unwrap();
        assert!(set.is_satisfied_by(&at_top));
        let off = FullMetric::new(vec![vec![0.0, 1.0, 2.0]], l).unwrap();
        assert!(!set.is_satisfied_by(&off));
    }
}
