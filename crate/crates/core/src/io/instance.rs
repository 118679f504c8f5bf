use serde::{Deserialize, Serialize};

use crate::assignment::{
    AssignmentProblem, CoassignPenalty, ConstraintSet, CostSpec, DistanceCost, FacilityCost, OpenLimit, Preset,
};
use crate::constructions::Construction;
use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances, FacilitySet, FullMetric, PreferenceProfile};
use crate::social_choice::{CandidateRankings, DistancePartialOrder};

/// On-disk instance. Facilities and agents' rankings refer to facilities by
/// name; at least one of `facility_distances` and `candidate_rankings` must
/// be present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub facilities: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facility_distances: Option<Vec<Vec<f64>>>,
    /// For each facility, the other facilities from nearest to farthest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_rankings: Option<Vec<Vec<String>>>,
    /// One ranking per agent, best first. A profile where every ranking has
    /// a single entry is top-only.
    pub agents: Vec<Vec<String>>,
    pub problem: ProblemSpec,
    /// True agent-to-facility distances, one row per agent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    SocialChoiceSum,
    SocialChoiceMedian,
    MatchingMinCost,
    MatchingEgalitarian,
    KCenter {
        k: usize,
    },
    KMedian {
        k: usize,
    },
    FacilityLocation {
        opening_costs: Vec<f64>,
    },
    Custom {
        distance_cost: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        capacities: Option<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        open_limit: Option<OpenLimitSpec>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        must_coassign: Vec<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        must_not_coassign: Vec<[usize; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        opening_costs: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        penalties: Vec<PenaltySpec>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OpenLimitSpec {
    AtMost(usize),
    Exactly(usize),
    AtLeast(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PenaltySpec {
    pub a: usize,
    pub b: usize,
    pub cost: f64,
}

impl ProblemSpec {
    pub fn preset(&self) -> Preset {
        match self {
            ProblemSpec::SocialChoiceSum => Preset::SocialChoiceSum,
            ProblemSpec::SocialChoiceMedian => Preset::SocialChoiceMedian,
            ProblemSpec::MatchingMinCost => Preset::MatchingMinCost,
            ProblemSpec::MatchingEgalitarian => Preset::MatchingEgalitarian,
            ProblemSpec::KCenter { .. } => Preset::KCenter,
            ProblemSpec::KMedian { .. } => Preset::KMedian,
            ProblemSpec::FacilityLocation { .. } => Preset::FacilityLocation,
            ProblemSpec::Custom { .. } => Preset::Custom,
        }
    }

    pub fn build(&self, n: usize, m: usize) -> Result<AssignmentProblem<f64>> {
        match self {
            ProblemSpec::SocialChoiceSum => AssignmentProblem::social_choice_sum(n, m),
            ProblemSpec::SocialChoiceMedian => AssignmentProblem::social_choice_median(n, m),
            ProblemSpec::MatchingMinCost => AssignmentProblem::matching_min_cost(n, m),
            ProblemSpec::MatchingEgalitarian => AssignmentProblem::matching_egalitarian(n, m),
            ProblemSpec::KCenter { k } => AssignmentProblem::k_center(n, m, *k),
            ProblemSpec::KMedian { k } => AssignmentProblem::k_median(n, m, *k),
            ProblemSpec::FacilityLocation { opening_costs } => {
                if opening_costs.len() != m {
                    return Err(Error::Schema(format!(
                        "problem.opening_costs has {} entries for {m} facilities",
                        opening_costs.len()
                    )));
                }
                AssignmentProblem::facility_location(n, opening_costs.clone())
            }
            ProblemSpec::Custom {
                distance_cost,
                capacities,
                open_limit,
                must_coassign,
                must_not_coassign,
                opening_costs,
                penalties,
            } => {
                let distance: DistanceCost = distance_cost.parse()?;
                let constraints = ConstraintSet {
                    capacities: capacities.clone(),
                    open_limit: open_limit.map(|o| match o {
                        OpenLimitSpec::AtMost(k) => OpenLimit::AtMost(k),
                        OpenLimitSpec::Exactly(k) => OpenLimit::Exactly(k),
                        OpenLimitSpec::AtLeast(k) => OpenLimit::AtLeast(k),
                    }),
                    must_coassign: must_coassign.iter().map(|[a, b]| (*a, *b)).collect(),
                    must_not_coassign: must_not_coassign.iter().map(|[a, b]| (*a, *b)).collect(),
                };
                let facility = FacilityCost {
                    opening: opening_costs.clone().unwrap_or_else(|| vec![0.0; m]),
                    penalties: penalties
                        .iter()
                        .map(|p| CoassignPenalty {
                            a: p.a,
                            b: p.b,
                            cost: p.cost,
                        })
                        .collect(),
                };
                AssignmentProblem::new(Preset::Custom, n, m, constraints, CostSpec::new(distance, facility))
            }
        }
    }

    /// Spec for a problem built from one of the presets or from explicit
    /// constraints.
    pub fn from_problem(problem: &AssignmentProblem<f64>) -> Self {
        let k = || match problem.constraints.open_limit {
            Some(OpenLimit::AtMost(k)) => k,
            _ => problem.num_facilities,
        };
        match problem.preset {
            Preset::SocialChoiceSum => ProblemSpec::SocialChoiceSum,
            Preset::SocialChoiceMedian => ProblemSpec::SocialChoiceMedian,
            Preset::MatchingMinCost => ProblemSpec::MatchingMinCost,
            Preset::MatchingEgalitarian => ProblemSpec::MatchingEgalitarian,
            Preset::KCenter => ProblemSpec::KCenter { k: k() },
            Preset::KMedian => ProblemSpec::KMedian { k: k() },
            Preset::FacilityLocation => ProblemSpec::FacilityLocation {
                opening_costs: problem.cost.facility.opening.clone(),
            },
            Preset::Custom => {
                let c = &problem.constraints;
                let f = &problem.cost.facility;
                ProblemSpec::Custom {
                    distance_cost: problem.cost.distance.name().into(),
                    capacities: c.capacities.clone(),
                    open_limit: c.open_limit.map(|o| match o {
                        OpenLimit::AtMost(k) => OpenLimitSpec::AtMost(k),
                        OpenLimit::Exactly(k) => OpenLimitSpec::Exactly(k),
                        OpenLimit::AtLeast(k) => OpenLimitSpec::AtLeast(k),
                    }),
                    must_coassign: c.must_coassign.iter().map(|&(a, b)| [a, b]).collect(),
                    must_not_coassign: c.must_not_coassign.iter().map(|&(a, b)| [a, b]).collect(),
                    opening_costs: (!f.opening.iter().all(|v| *v == 0.0)).then(|| f.opening.clone()),
                    penalties: f
                        .penalties
                        .iter()
                        .map(|p| PenaltySpec {
                            a: p.a,
                            b: p.b,
                            cost: p.cost,
                        })
                        .collect(),
                }
            }
        }
    }
}

/// A parsed and validated instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub facilities: FacilitySet,
    pub l: Option<FacilityDistances<f64>>,
    pub candidate_rankings: Option<CandidateRankings>,
    pub profile: PreferenceProfile,
    pub problem: ProblemSpec,
    pub metric: Option<FullMetric<f64>>,
    pub source: Option<String>,
}

impl Instance {
    pub fn num_agents(&self) -> usize {
        self.profile.num_agents()
    }

    pub fn distances(&self) -> Result<&FacilityDistances<f64>> {
        self.l
            .as_ref()
            .ok_or_else(|| Error::Schema("this command needs `facility_distances`".into()))
    }

    /// Closure of the known facility-distance comparisons, from numeric
    /// distances when present.
    pub fn partial_order(&self) -> Result<DistancePartialOrder> {
        match (&self.l, &self.candidate_rankings) {
            (Some(l), _) => Ok(DistancePartialOrder::from_distances(l)),
            (None, Some(r)) => DistancePartialOrder::from_rankings(r),
            (None, None) => unreachable!("validated instances carry distances or rankings"),
        }
    }

    pub fn assignment_problem(&self) -> Result<AssignmentProblem<f64>> {
        self.problem.build(self.num_agents(), self.facilities.len())
    }

    pub fn facility(&self, name: &str) -> Result<Facility> {
        self.facilities.lookup(name).ok_or_else(|| Error::Unknown {
            kind: "facility",
            name: name.into(),
        })
    }

    pub fn to_file(&self) -> InstanceFile {
        let name = |f: &Facility| self.facilities.name(*f).to_string();
        InstanceFile {
            facilities: self.facilities.names().to_vec(),
            facility_distances: self.l.as_ref().map(|l| l.rows()),
            candidate_rankings: self
                .candidate_rankings
                .as_ref()
                .map(|r| r.rankings().iter().map(|row| row.iter().map(name).collect()).collect()),
            agents: self
                .profile
                .rankings()
                .iter()
                .map(|r| r.iter().map(name).collect())
                .collect(),
            problem: self.problem.clone(),
            metric: self.metric.as_ref().map(|d| d.rows()),
            source: self.source.clone(),
        }
    }

    pub fn from_construction(c: &Construction<f64>) -> Self {
        Self {
            facilities: c.facilities.clone(),
            l: Some(c.l.clone()),
            candidate_rankings: None,
            profile: c.profile.clone(),
            problem: ProblemSpec::from_problem(&c.problem),
            metric: c.metric.clone(),
            source: None,
        }
    }
}

impl InstanceFile {
    /// Checks names, shapes and every model invariant.
    pub fn validate(&self) -> Result<Instance> {
        let facilities = FacilitySet::new(self.facilities.clone()).map_err(|e| schema("facilities", e))?;
        let m = facilities.len();
        let lookup = |field: &str, name: &str| {
            facilities
                .lookup(name)
                .ok_or_else(|| Error::Schema(format!("{field}: unknown facility `{name}`")))
        };
        if self.facility_distances.is_none() && self.candidate_rankings.is_none() {
            return Err(Error::Schema(
                "instance needs `facility_distances` or `candidate_rankings`".into(),
            ));
        }
        let l = self
            .facility_distances
            .as_ref()
            .map(|rows| {
                if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                    return Err(Error::Schema(format!("facility_distances must be {m} x {m}")));
                }
                FacilityDistances::new(rows.clone()).map_err(|e| schema("facility_distances", e))
            })
            .transpose()?;
        let candidate_rankings = self
            .candidate_rankings
            .as_ref()
            .map(|rows| {
                let rankings = rows
                    .iter()
                    .enumerate()
                    .map(|(a, row)| {
                        row.iter()
                            .map(|name| lookup(&format!("candidate_rankings[{a}]"), name))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rankings = CandidateRankings::new(m, rankings).map_err(|e| schema("candidate_rankings", e))?;
                if let Some(l) = &l {
                    for a in l.facilities() {
                        let row = rankings.ranking(a);
                        if row.windows(2).any(|w| l.get(a, w[0]) > l.get(a, w[1])) {
                            return Err(Error::Schema(format!(
                                "candidate_rankings[{}] disagrees with facility_distances",
                                a.0
                            )));
                        }
                    }
                }
                Ok(rankings)
            })
            .transpose()?;

        let rankings = self
            .agents
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .map(|name| lookup(&format!("agents[{i}]"), name))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let top_only = m > 1 && !rankings.is_empty() && rankings.iter().all(|r| r.len() == 1);
        let profile = if top_only {
            PreferenceProfile::top_only(m, rankings.iter().map(|r| r[0]).collect())
        } else {
            PreferenceProfile::new(m, rankings)
        }
        .map_err(|e| schema("agents", e))?;

        let metric = match (&self.metric, &l) {
            (None, _) => None,
            (Some(_), None) => return Err(Error::Schema("metric needs facility_distances".into())),
            (Some(rows), Some(l)) => {
                if rows.len() != profile.num_agents() || rows.iter().any(|r| r.len() != m) {
                    return Err(Error::Schema(format!(
                        "metric must have {} rows of {m} distances",
                        profile.num_agents()
                    )));
                }
                let d = FullMetric::new(rows.clone(), l.clone()).map_err(|e| schema("metric", e))?;
                if !crate::model::check_consistency(&profile, &d) {
                    return Err(Error::Schema("metric contradicts the agents' rankings".into()));
                }
                Some(d)
            }
        };
        let instance = Instance {
            facilities,
            l,
            candidate_rankings,
            profile,
            problem: self.problem.clone(),
            metric,
            source: self.source.clone(),
        };
        if instance.problem.preset() != Preset::SocialChoiceMedian {
            instance.assignment_problem().map_err(|e| schema("problem", e))?;
        }
        Ok(instance)
    }
}

fn schema(field: &str, e: Error) -> Error {
    Error::Schema(format!("{field}: {e}"))
}
