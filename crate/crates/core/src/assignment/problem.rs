use std::fmt;
use std::str::FromStr;

use crate::assignment::constraints::PartialState;
use crate::assignment::{CoassignPenalty, ConstraintSet, CostSpec, DistanceCost, FacilityCost, OpenLimit};
use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances, FullMetric};
use crate::scalar::Scalar;

/// Named problem families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    SocialChoiceSum,
    SocialChoiceMedian,
    MatchingMinCost,
    MatchingEgalitarian,
    KCenter,
    KMedian,
    FacilityLocation,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::SocialChoiceSum,
        Preset::SocialChoiceMedian,
        Preset::MatchingMinCost,
        Preset::MatchingEgalitarian,
        Preset::KCenter,
        Preset::KMedian,
        Preset::FacilityLocation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::SocialChoiceSum => "social_choice_sum",
            Preset::SocialChoiceMedian => "social_choice_median",
            Preset::MatchingMinCost => "matching_min_cost",
            Preset::MatchingEgalitarian => "matching_egalitarian",
            Preset::KCenter => "k_center",
            Preset::KMedian => "k_median",
            Preset::FacilityLocation => "facility_location",
            Preset::Custom => "custom",
        }
    }

    pub fn needs_k(self) -> bool {
        matches!(self, Preset::KCenter | Preset::KMedian)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .chain([Preset::Custom])
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "problem preset",
                name: s.into(),
            })
    }
}

/// Agent-to-facility map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<Facility>);

impl Assignment {
    pub fn constant(n: usize, f: Facility) -> Self {
        Assignment(vec![f; n])
    }

    pub fn get(&self, agent: usize) -> Facility {
        self.0[agent]
    }

    pub fn as_slice(&self) -> &[Facility] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_i = d(i, x(i))`.
    pub fn distance_vector<T: Scalar>(&self, d: &FullMetric<T>) -> Vec<T> {
        self.0.iter().enumerate().map(|(i, f)| d.get(i, *f).clone()).collect()
    }

    pub fn open_facilities(&self) -> Vec<Facility> {
        let mut open = self.0.clone();
        open.sort();
        open.dedup();
        open
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub const MAX_ASSIGNMENTS: u128 = 1_000_000;
const MAX_SEARCH_NODES: u64 = 20_000_000;

/// Constraints and cost for a fixed number of agents and facilities.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentProblem<T> {
    pub preset: Preset,
    pub num_agents: usize,
    pub num_facilities: usize,
    pub constraints: ConstraintSet,
    pub cost: CostSpec<T>,
}

impl<T: Scalar> AssignmentProblem<T> {
    /// Validates shapes and checks that some valid assignment exists.
    pub fn new(
        preset: Preset,
        num_agents: usize,
        num_facilities: usize,
        constraints: ConstraintSet,
        cost: CostSpec<T>,
    ) -> Result<Self> {
        if num_facilities == 0 {
            return Err(Error::Dimension("no facilities".into()));
        }
        constraints.validate(num_agents, num_facilities)?;
        cost.validate(num_agents, num_facilities)?;
        let problem = Self {
            preset,
            num_agents,
            num_facilities,
            constraints,
            cost,
        };
        if problem.first_valid()?.is_none() {
            return Err(Error::NoValidAssignment);
        }
        Ok(problem)
    }

    /// Everyone at one facility, sum of distances.
    pub fn social_choice_sum(n: usize, m: usize) -> Result<Self> {
        Self::new(
            Preset::SocialChoiceSum,
            n,
            m,
            ConstraintSet {
                open_limit: Some(OpenLimit::Exactly(1)),
                ..Default::default()
            },
            CostSpec::new(DistanceCost::Sum, FacilityCost::zero(m)),
        )
    }

    /// Median social choice is not an assignment problem with a subadditive
    /// cost; it is handled by the augmented-majority rule instead.
    pub fn social_choice_median(_n: usize, _m: usize) -> Result<Self> {
        Err(Error::NotSubadditive("median".into()))
    }

    pub fn matching_min_cost(n: usize, m: usize) -> Result<Self> {
        Self::matching(Preset::MatchingMinCost, DistanceCost::Sum, n, m)
    }

    pub fn matching_egalitarian(n: usize, m: usize) -> Result<Self> {
        Self::matching(Preset::MatchingEgalitarian, DistanceCost::Max, n, m)
    }

    fn matching(preset: Preset, distance: DistanceCost, n: usize, m: usize) -> Result<Self> {
        if n > m {
            return Err(Error::Dimension(format!("cannot match {n} agents to {m} facilities")));
        }
        Self::new(
            preset,
            n,
            m,
            ConstraintSet {
                capacities: Some(vec![1; m]),
                ..Default::default()
            },
            CostSpec::new(distance, FacilityCost::zero(m)),
        )
    }

    pub fn k_center(n: usize, m: usize, k: usize) -> Result<Self> {
        Self::k_clustering(Preset::KCenter, DistanceCost::Max, n, m, k)
    }

    pub fn k_median(n: usize, m: usize, k: usize) -> Result<Self> {
        Self::k_clustering(Preset::KMedian, DistanceCost::Sum, n, m, k)
    }

    fn k_clustering(preset: Preset, distance: DistanceCost, n: usize, m: usize, k: usize) -> Result<Self> {
        if k == 0 || k > m {
            return Err(Error::OutOfRange(format!("k = {k} with {m} facilities")));
        }
        Self::new(
            preset,
            n,
            m,
            ConstraintSet {
                open_limit: Some(OpenLimit::AtMost(k)),
                ..Default::default()
            },
            CostSpec::new(distance, FacilityCost::zero(m)),
        )
    }

    pub fn facility_location(n: usize, opening: Vec<T>) -> Result<Self> {
        let m = opening.len();
        Self::new(
            Preset::FacilityLocation,
            n,
            m,
            ConstraintSet::unconstrained(),
            CostSpec::new(
                DistanceCost::Sum,
                FacilityCost {
                    opening,
                    penalties: Vec::new(),
                },
            ),
        )
    }

    /// Builds a preset by name; `k` is required for the clustering presets and
    /// `opening` for facility location (zero costs otherwise).
    pub fn preset(preset: Preset, n: usize, m: usize, k: Option<usize>, opening: Option<Vec<T>>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| Error::Schema(format!("preset `{preset}` needs parameter k")));
        match preset {
            Preset::SocialChoiceSum => Self::social_choice_sum(n, m),
            Preset::SocialChoiceMedian => Self::social_choice_median(n, m),
            Preset::MatchingMinCost => Self::matching_min_cost(n, m),
            Preset::MatchingEgalitarian => Self::matching_egalitarian(n, m),
            Preset::KCenter => Self::k_center(n, m, need_k()?),
            Preset::KMedian => Self::k_median(n, m, need_k()?),
            Preset::FacilityLocation => Self::facility_location(n, opening.unwrap_or_else(|| vec![T::zero(); m])),
            Preset::Custom => Err(Error::Schema("custom problems need explicit constraints".into())),
        }
    }

    /// The same problem with every cost mapped through `f`.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> AssignmentProblem<U> {
        AssignmentProblem {
            preset: self.preset,
            num_agents: self.num_agents,
            num_facilities: self.num_facilities,
            constraints: self.constraints.clone(),
            cost: CostSpec {
                distance: self.cost.distance,
                facility: FacilityCost {
                    opening: self.cost.facility.opening.iter().map(&f).collect(),
                    penalties: self
                        .cost
                        .facility
                        .penalties
                        .iter()
                        .map(|p| CoassignPenalty {
                            a: p.a,
                            b: p.b,
                            cost: f(&p.cost),
                        })
                        .collect(),
                },
            },
        }
    }

    pub fn is_valid(&self, x: &Assignment) -> bool {
        x.len() == self.num_agents && self.constraints.is_valid(x.as_slice(), self.num_facilities)
    }

    /// `c(x, d)` for an arbitrary `n x m` distance matrix.
    pub fn cost_with(&self, x: &Assignment, dist: &[Vec<T>]) -> T {
        let s: Vec<T> = x.0.iter().enumerate().map(|(i, f)| dist[i][f.0].clone()).collect();
        self.cost.total(x.as_slice(), &s)
    }

    pub fn total_cost(&self, x: &Assignment, d: &FullMetric<T>) -> T {
        self.cost.total(x.as_slice(), &x.distance_vector(d))
    }

    fn first_valid(&self) -> Result<Option<Assignment>> {
        let mut found = None;
        self.search(&mut |x| {
            found = Some(Assignment(x.to_vec()));
            false
        })?;
        Ok(found)
    }

    /// Lexicographically ordered valid assignments; refuses when there are
    /// more than `limit`.
    pub fn valid_assignments(&self, limit: usize) -> Result<Vec<Assignment>> {
        let mut out = Vec::new();
        let mut overflow = false;
        self.search(&mut |x| {
            if out.len() == limit {
                overflow = true;
                return false;
            }
            out.push(Assignment(x.to_vec()));
            true
        })?;
        if overflow {
            return Err(Error::SearchSpaceTooLarge {
                size: self.raw_search_space(),
                limit: limit as u128,
            });
        }
        Ok(out)
    }

    /// `m^n`, saturating.
    pub fn raw_search_space(&self) -> u128 {
        (0..self.num_agents).fold(1u128, |acc, _| acc.saturating_mul(self.num_facilities as u128))
    }

    /// Depth-first search over valid assignments in lexicographic order; the
    /// visitor returns `false` to stop.
    pub(crate) fn search(&self, visit: &mut dyn FnMut(&[Facility]) -> bool) -> Result<()> {
        let mut state = PartialState::new(&self.constraints, self.num_agents, self.num_facilities);
        let mut prefix = Vec::with_capacity(self.num_agents);
        let mut nodes = 0u64;
        self.dfs(&mut state, &mut prefix, &mut nodes, visit)?;
        Ok(())
    }

    fn dfs(
        &self,
        state: &mut PartialState<'_>,
        prefix: &mut Vec<Facility>,
        nodes: &mut u64,
        visit: &mut dyn FnMut(&[Facility]) -> bool,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > MAX_SEARCH_NODES {
            return Err(Error::SearchSpaceTooLarge {
                size: self.raw_search_space(),
                limit: MAX_SEARCH_NODES as u128,
            });
        }
        if prefix.len() == self.num_agents {
            return Ok(visit(prefix));
        }
        for f in (0..self.num_facilities).map(Facility) {
            if !state.can_place(prefix, f) {
                continue;
            }
            state.place(f);
            prefix.push(f);
            let go_on = self.dfs(state, prefix, nodes, visit)?;
            prefix.pop();
            state.remove(f);
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A problem together with the agent-to-facility distances it is solved on.
///
/// Projected instances also record each agent's site (its first choice) and
/// the facility metric, which the clustering heuristics need.
#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentInstance<T> {
    pub problem: AssignmentProblem<T>,
    pub dist: Vec<Vec<T>>,
    pub sites: Option<(Vec<Facility>, FacilityDistances<T>)>,
}

impl<T: Scalar> AssignmentInstance<T> {
    pub fn new(problem: AssignmentProblem<T>, dist: Vec<Vec<T>>) -> Result<Self> {
        if dist.len() != problem.num_agents || dist.iter().any(|r| r.len() != problem.num_facilities) {
            return Err(Error::Dimension(format!(
                "distance matrix is not {} x {}",
                problem.num_agents, problem.num_facilities
            )));
        }
        Ok(Self {
            problem,
            dist,
            sites: None,
        })
    }

    pub fn from_metric(problem: AssignmentProblem<T>, d: &FullMetric<T>) -> Result<Self> {
        Self::new(problem, d.rows())
    }

    pub fn cost(&self, x: &Assignment) -> T {
        self.problem.cost_with(x, &self.dist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_by_name() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("k_means".parse::<Preset>().is_err());
    }

    #[test]
    fn median_preset_is_refused() {
        assert_eq!(
            AssignmentProblem::<f64>::social_choice_median(3, 2),
            Err(Error::NotSubadditive("median".into()))
        );
    }

    #[test]
    fn matching_needs_enough_facilities() {
        assert!(AssignmentProblem::<f64>::matching_min_cost(3, 2).is_err());
        assert!(AssignmentProblem::<f64>::matching_min_cost(2, 2).is_ok());
    }

    #[test]
    fn unsatisfiable_constraints_rejected() {
        let c = ConstraintSet {
            must_coassign: vec![(0, 1)],
            must_not_coassign: vec![(0, 1)],
            ..Default::default()
        };
        let r = AssignmentProblem::<f64>::new(
            Preset::Custom,
            2,
            2,
            c,
            CostSpec::new(DistanceCost::Sum, FacilityCost::zero(2)),
        );
        assert_eq!(r, Err(Error::NoValidAssignment));
    }

    #[test]
    fn enumerates_permutations_in_order() {
        let p = AssignmentProblem::<f64>::matching_min_cost(3, 3).unwrap();
        let all = p.valid_assignments(100).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|x| p.is_valid(x)));
        assert!(p.valid_assignments(5).is_err());
    }

    #[test]
    fn social_choice_alternatives_are_constant() {
        let p = AssignmentProblem::<f64>::social_choice_sum(4, 3).unwrap();
        let all = p.valid_assignments(100).unwrap();
        assert_eq!(
            all,
            (0..3).map(|f| Assignment::constant(4, Facility(f))).collect::<Vec<_>>()
        );
    }

    #[test]
    fn colocated_agents_cost_nothing() {
        let p = AssignmentProblem::<f64>::matching_min_cost(2, 2).unwrap();
        let dist = vec![vec![0.0, 3.0], vec![3.0, 0.0]];
        assert_eq!(p.cost_with(&Assignment(vec![Facility(0), Facility(1)]), &dist), 0.0);
    }
}
