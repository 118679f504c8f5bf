//! Solvers for problems whose agent-to-facility distances are fully known.

mod brute;
mod clustering;
mod matching;

pub use brute::{brute_force_optimal, MAX_CANDIDATES};
pub use clustering::{
    facility_location_solver, k_center_greedy, k_median_solver, FACILITY_LOCATION_GREEDY_BETA, K_CENTER_GREEDY_BETA,
    K_MEDIAN_LOCAL_SEARCH_BETA, MAX_EXACT_FACILITY_LOCATION, MAX_EXACT_SUBSETS,
};
pub use matching::{bottleneck_matching, min_cost_matching};

use std::fmt;
use std::str::FromStr;

use crate::assignment::{Assignment, AssignmentInstance, DistanceCost, OpenLimit, Preset};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverResult<T> {
    pub assignment: Assignment,
    /// Cost under the solver's own objective on the distances it was given.
    pub cost: T,
    /// Approximation factor the solver guarantees.
    pub beta: f64,
    pub exact: bool,
}

impl<T> SolverResult<T> {
    pub fn exact(assignment: Assignment, cost: T) -> Self {
        Self {
            assignment,
            cost,
            beta: 1.0,
            exact: true,
        }
    }

    pub fn approximate(assignment: Assignment, cost: T, beta: f64) -> Self {
        Self {
            assignment,
            cost,
            beta,
            exact: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solver {
    BruteForce,
    MinCostMatching,
    BottleneckMatching,
    KCenterGreedy,
    KMedian,
    FacilityLocation,
    /// Picks a solver from the problem's preset.
    Auto,
}

impl Solver {
    pub const ALL: [Solver; 7] = [
        Solver::BruteForce,
        Solver::MinCostMatching,
        Solver::BottleneckMatching,
        Solver::KCenterGreedy,
        Solver::KMedian,
        Solver::FacilityLocation,
        Solver::Auto,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Solver::BruteForce => "brute_force",
            Solver::MinCostMatching => "min_cost_matching",
            Solver::BottleneckMatching => "bottleneck_matching",
            Solver::KCenterGreedy => "k_center_greedy",
            Solver::KMedian => "k_median",
            Solver::FacilityLocation => "facility_location",
            Solver::Auto => "auto",
        }
    }

    /// Concrete solver `Auto` resolves to for an instance.
    pub fn resolve<T: Scalar>(self, instance: &AssignmentInstance<T>) -> Solver {
        if self != Solver::Auto {
            return self;
        }
        let p = &instance.problem;
        match p.preset {
            Preset::MatchingMinCost => Solver::MinCostMatching,
            Preset::MatchingEgalitarian => Solver::BottleneckMatching,
            Preset::KMedian => Solver::KMedian,
            Preset::FacilityLocation => Solver::FacilityLocation,
            Preset::KCenter if p.raw_search_space() > MAX_CANDIDATES as u128 && instance.sites.is_some() => {
                Solver::KCenterGreedy
            }
            _ => Solver::BruteForce,
        }
    }

    pub fn solve<T: Scalar>(self, instance: &AssignmentInstance<T>) -> Result<SolverResult<T>> {
        let solver = self.resolve(instance);
        let p = &instance.problem;
        let c = &p.constraints;
        let mismatch = |reason: &str| Error::SolverMismatch {
            solver: solver.name(),
            reason: reason.into(),
        };
        let no_pairs = c.must_coassign.is_empty() && c.must_not_coassign.is_empty();
        let free_facilities = p.cost.facility.is_zero();
        let result = match solver {
            Solver::BruteForce | Solver::Auto => brute_force_optimal(instance)?,
            Solver::MinCostMatching | Solver::BottleneckMatching => {
                let unit = c.capacities.as_ref().is_some_and(|caps| caps.iter().all(|&k| k == 1));
                if !(unit && c.open_limit.is_none() && no_pairs && free_facilities) {
                    return Err(mismatch(
                        "needs unit capacities and no other constraints or facility costs",
                    ));
                }
                match (solver, p.cost.distance) {
                    (Solver::MinCostMatching, DistanceCost::Sum) => min_cost_matching(&instance.dist)?,
                    (Solver::BottleneckMatching, DistanceCost::Max) => bottleneck_matching(&instance.dist)?,
                    _ => return Err(mismatch("distance cost does not match the matching objective")),
                }
            }
            Solver::KCenterGreedy | Solver::KMedian => {
                let k = match c.open_limit {
                    Some(OpenLimit::AtMost(k)) if c.capacities.is_none() && no_pairs && free_facilities => k,
                    _ => return Err(mismatch("needs an at-most-k open limit and nothing else")),
                };
                match (solver, p.cost.distance) {
                    (Solver::KCenterGreedy, DistanceCost::Max) => {
                        let (sites, l) = instance
                            .sites
                            .as_ref()
                            .ok_or_else(|| mismatch("needs agents located at facilities"))?;
                        k_center_greedy(sites, l, k)?
                    }
                    (Solver::KMedian, DistanceCost::Sum) => k_median_solver(&instance.dist, p.num_facilities, k)?,
                    _ => return Err(mismatch("distance cost does not match the clustering objective")),
                }
            }
            Solver::FacilityLocation => {
                if *c != Default::default()
                    || !p.cost.facility.penalties.is_empty()
                    || p.cost.distance != DistanceCost::Sum
                {
                    return Err(mismatch(
                        "needs an unconstrained sum-cost problem with opening costs only",
                    ));
                }
                facility_location_solver(&instance.dist, &p.cost.facility.opening)?
            }
        };
        debug_assert!(p.is_valid(&result.assignment));
        Ok(result)
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = match s {
            "brute" => "brute_force",
            "hungarian" => "min_cost_matching",
            "bottleneck" => "bottleneck_matching",
            "greedy" => "k_center_greedy",
            other => other,
        };
        Solver::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "solver",
                name: s.into(),
            })
    }
}
