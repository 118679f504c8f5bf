//! Named worst-case instances with the metrics that make them bad.
//!
//! Each construction carries the instance a mechanism sees plus one or more
//! scenarios: an outcome together with a consistent metric on which that
//! outcome is far from optimal. Some lower bounds hold only when the facility
//! distances are unknown, so a scenario's metric may carry facility distances
//! of its own.

use std::fmt;
use std::str::FromStr;

use crate::assignment::{Assignment, AssignmentProblem};
use crate::audit::{Distortion, Objective};
use crate::error::{Error, Result};
use crate::model::{check_consistency, Facility, FacilityDistances, FacilitySet, FullMetric, PreferenceProfile};
use crate::scalar::Scalar;
use crate::social_choice::{order_statistic, percentile_rank};

pub const DEFAULT_EPSILON: f64 = 1e-6;
pub const DEFAULT_Q: usize = 1000;
pub const DEFAULT_L: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionName {
    Sum5Tight,
    MedianTopchoiceBad,
    MedianMatchingUnbounded,
    FacilityLocationUnbounded,
    KmedianLb,
    EgalitarianLb,
    MatchingLb3,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 7] = [
        ConstructionName::Sum5Tight,
        ConstructionName::MedianTopchoiceBad,
        ConstructionName::MedianMatchingUnbounded,
        ConstructionName::FacilityLocationUnbounded,
        ConstructionName::KmedianLb,
        ConstructionName::EgalitarianLb,
        ConstructionName::MatchingLb3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionName::Sum5Tight => "sum5_tight",
            ConstructionName::MedianTopchoiceBad => "median_topchoice_bad",
            ConstructionName::MedianMatchingUnbounded => "median_matching_unbounded",
            ConstructionName::FacilityLocationUnbounded => "facility_location_unbounded",
            ConstructionName::KmedianLb => "kmedian_lb",
            ConstructionName::EgalitarianLb => "egalitarian_lb",
            ConstructionName::MatchingLb3 => "matching_lb3",
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "example",
                name: s.into(),
            })
    }
}

/// Generator parameters. Each construction reads the ones it needs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub q: usize,
    pub epsilon: f64,
    pub big_l: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            q: DEFAULT_Q,
            epsilon: DEFAULT_EPSILON,
            big_l: DEFAULT_L,
        }
    }
}

impl Params {
    /// Overrides from `key=value` pairs separated by commas, e.g.
    /// `q=5,eps=1e-3`. Accepted keys: `q`, `eps` (or `epsilon`), `L`.
    pub fn parse_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Schema(format!("parameter `{part}` is not key=value")))?;
            let bad = || Error::Schema(format!("parameter `{key}` has invalid value `{value}`"));
            match key.trim() {
                "q" => self.q = value.trim().parse().map_err(|_| bad())?,
                "eps" | "epsilon" => self.epsilon = value.trim().parse().map_err(|_| bad())?,
                "L" | "l" | "big_l" => self.big_l = value.trim().parse().map_err(|_| bad())?,
                other => {
                    return Err(Error::Unknown {
                        kind: "parameter",
                        name: other.into(),
                    })
                }
            }
        }
        Ok(self)
    }
}

/// An outcome and a consistent metric that punishes it.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario<T> {
    pub label: String,
    pub outcome: Assignment,
    pub metric: FullMetric<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction<T> {
    pub name: ConstructionName,
    pub params: Params,
    pub facilities: FacilitySet,
    pub profile: PreferenceProfile,
    /// Facility distances handed to mechanisms.
    pub l: FacilityDistances<T>,
    /// Feasible outcomes and their facility costs. Social choice instances
    /// use the one-facility problem.
    pub problem: AssignmentProblem<T>,
    pub objective: Objective,
    /// The listed agent locations, when the construction names one.
    pub metric: Option<FullMetric<T>>,
    pub scenarios: Vec<Scenario<T>>,
}

impl<T: Scalar> Construction<T> {
    /// Cost of `x` on `d` under the construction's objective.
    pub fn cost(&self, x: &Assignment, d: &FullMetric<T>) -> Result<T> {
        match self.objective {
            Objective::Sum => Ok(self.problem.total_cost(x, d)),
            Objective::Percentile(alpha) => {
                let s = x.distance_vector(d);
                let k = percentile_rank(s.len(), alpha)?;
                Ok(order_statistic(&s, k) + self.problem.cost.facility.evaluate(x.as_slice()))
            }
        }
    }

    /// Best cost over every feasible outcome on `d`, and an outcome attaining it.
    pub fn optimum(&self, d: &FullMetric<T>) -> Result<(T, Assignment)> {
        let mut best: Option<(T, Assignment)> = None;
        for x in self.problem.valid_assignments(crate::audit::MAX_AUDIT_ALTERNATIVES)? {
            let c = self.cost(&x, d)?;
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, x));
            }
        }
        best.ok_or(Error::NoValidAssignment)
    }

    /// `cost(x, d) / optimum(d)`.
    pub fn ratio(&self, x: &Assignment, d: &FullMetric<T>) -> Result<Distortion<T>> {
        Ok(Distortion::ratio(self.cost(x, d)?, self.optimum(d)?.0))
    }

    /// Whether every listed metric agrees with the profile.
    pub fn metrics_consistent(&self) -> bool {
        self.metric.iter().all(|d| check_consistency(&self.profile, d))
            && self
                .scenarios
                .iter()
                .all(|s| check_consistency(&self.profile, &s.metric))
    }

    pub fn facility(&self, name: &str) -> Facility {
        self.facilities.lookup(name).expect("construction facility")
    }
}

pub fn generate<T: Scalar>(name: ConstructionName, params: Params) -> Result<Construction<T>> {
    match name {
        ConstructionName::Sum5Tight => sum5_tight(params),
        ConstructionName::MedianTopchoiceBad => median_topchoice_bad(params),
        ConstructionName::MedianMatchingUnbounded => median_matching_unbounded(params),
        ConstructionName::FacilityLocationUnbounded => facility_location_unbounded(params),
        ConstructionName::KmedianLb => kmedian_lb(params),
        ConstructionName::EgalitarianLb => egalitarian_lb(params),
        ConstructionName::MatchingLb3 => matching_lb3(params),
    }
}

/// Looks a construction up by name.
pub fn generate_named<T: Scalar>(name: &str, params: Params) -> Result<Construction<T>> {
    generate(name.parse()?, params)
}

fn names(list: &[&str]) -> FacilitySet {
    FacilitySet::new(list.iter().map(|s| s.to_string()).collect()).expect("distinct names")
}

fn small_epsilon(params: &Params, bound: f64) -> Result<f64> {
    if !(params.epsilon > 0.0 && params.epsilon < bound) {
        return Err(Error::OutOfRange(format!(
            "epsilon = {} must lie in (0, {bound})",
            params.epsilon
        )));
    }
    Ok(params.epsilon)
}

fn repeat(rows: &mut Vec<Vec<usize>>, count: usize, ranking: &[usize]) {
    rows.extend(std::iter::repeat_n(ranking.to_vec(), count));
}

fn rows<T: Scalar>(values: &[&[f64]]) -> Vec<Vec<T>> {
    values.iter().map(|r| r.iter().map(|v| T::of(*v)).collect()).collect()
}

fn assign(list: &[usize]) -> Assignment {
    Assignment(list.iter().copied().map(Facility).collect())
}

/// `q` agents `Y > W > P`, `q` agents `P > Y > W`, one agent `W > P > Y`.
/// The augmented majority graph picks `W`, whose total distance is
/// `q(5 - 4 eps) + 1` against `q + 1` for `Y`.
pub fn sum5_tight<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let eps = small_epsilon(&params, 0.5)?;
    let q = params.q;
    if q == 0 {
        return Err(Error::OutOfRange("q must be positive".into()));
    }
    let (w, y, p) = (0, 1, 2);
    let l = FacilityDistances::from_upper(3, &[T::of(2.0 - 2.0 * eps), T::of(2.0 - eps), T::of(2.0)])?;
    let mut rankings = Vec::new();
    repeat(&mut rankings, q, &[y, w, p]);
    repeat(&mut rankings, q, &[p, y, w]);
    repeat(&mut rankings, 1, &[w, p, y]);
    let profile = PreferenceProfile::from_indices(3, &rankings)?;

    let at_y = [2.0 - 2.0 * eps, 0.0, 2.0];
    let near_p = [3.0 - 2.0 * eps, 1.0, 1.0];
    let mut d = vec![at_y.as_slice(); q];
    d.extend(std::iter::repeat_n(near_p.as_slice(), q));
    d.push(&[1.0, 1.0, 1.0]);
    let metric = FullMetric::new(rows(&d), l.clone())?;
    let n = 2 * q + 1;
    Ok(Construction {
        name: ConstructionName::Sum5Tight,
        params,
        facilities: names(&["W", "Y", "P"]),
        profile,
        problem: AssignmentProblem::social_choice_sum(n, 3)?,
        objective: Objective::Sum,
        scenarios: vec![Scenario {
            label: "winner W".into(),
            outcome: Assignment::constant(n, Facility(w)),
            metric: metric.clone(),
        }],
        metric: Some(metric),
        l,
    })
}

/// Four facilities on a 2-4 cycle with two agents on top of each. Everyone's
/// top choice looks symmetric, but on the listed metric `W` has median 5 and
/// `X` median 1.
pub fn median_topchoice_bad<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let (w, x, y, z) = (0, 1, 2, 3);
    // W-X 4, W-Y 2, W-Z 2, X-Y 2, X-Z 2, Y-Z 4
    let upper: Vec<T> = [4.0, 2.0, 2.0, 2.0, 2.0, 4.0].into_iter().map(T::of).collect();
    let l = FacilityDistances::from_upper(4, &upper)?;
    let mut rankings = Vec::new();
    repeat(&mut rankings, 2, &[w, x, y, z]);
    repeat(&mut rankings, 2, &[x, y, z, w]);
    repeat(&mut rankings, 2, &[y, x, w, z]);
    repeat(&mut rankings, 2, &[z, x, w, y]);
    let profile = PreferenceProfile::from_indices(4, &rankings)?;
    let d = [
        [100.0, 102.0, 102.0, 102.0],
        [100.0, 102.0, 102.0, 102.0],
        [5.0, 1.0, 3.0, 3.0],
        [5.0, 1.0, 3.0, 3.0],
        [3.0, 1.0, 1.0, 3.0],
        [3.0, 1.0, 1.0, 3.0],
        [3.0, 1.0, 3.0, 1.0],
        [3.0, 1.0, 3.0, 1.0],
    ];
    let d: Vec<&[f64]> = d.iter().map(|r| r.as_slice()).collect();
    let metric = FullMetric::new(rows(&d), l.clone())?;
    Ok(Construction {
        name: ConstructionName::MedianTopchoiceBad,
        params,
        facilities: names(&["W", "X", "Y", "Z"]),
        profile,
        problem: AssignmentProblem::social_choice_sum(8, 4)?,
        objective: Objective::Percentile(0.5),
        scenarios: vec![Scenario {
            label: "winner W".into(),
            outcome: Assignment::constant(8, Facility(w)),
            metric: metric.clone(),
        }],
        metric: Some(metric),
        l,
    })
}

/// Agents `a, b` rank `X > Y > Z`, agent `c` ranks `Z > X > Y`. Whichever of
/// `a, b` gets `Y` may be the one sitting next to `X`, which turns a median
/// of `2 eps` into a median of 1.
pub fn median_matching_unbounded<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let eps = small_epsilon(&params, 0.5)?;
    let (x, y, z) = (0, 1, 2);
    let l = FacilityDistances::from_upper(3, &[T::of(2.0), T::of(1000.0), T::of(1000.0)])?;
    let profile = PreferenceProfile::from_indices(3, &[vec![x, y, z], vec![x, y, z], vec![z, x, y]])?;
    let near_x = [2.0 * eps, 2.0 + 2.0 * eps, 1000.0 + 2.0 * eps];
    let between = [1.0, 1.0, 1001.0];
    let at_z = [1000.0 + eps, 1000.0 + eps, eps];
    let first = FullMetric::new(rows(&[&near_x, &between, &at_z]), l.clone())?;
    let second = FullMetric::new(rows(&[&between, &near_x, &at_z]), l.clone())?;

    let problem = AssignmentProblem::matching_min_cost(3, 3)?;
    let mut construction = Construction {
        name: ConstructionName::MedianMatchingUnbounded,
        params,
        facilities: names(&["X", "Y", "Z"]),
        profile,
        l,
        problem,
        objective: Objective::Percentile(0.5),
        metric: Some(first.clone()),
        scenarios: Vec::new(),
    };
    // a and b are indistinguishable, so every matching meets its bad metric
    for outcome in construction.problem.valid_assignments(16)? {
        let r1 = construction.ratio(&outcome, &first)?;
        let r2 = construction.ratio(&outcome, &second)?;
        let (metric, which) = if r2.cmp_value(&r1).is_gt() {
            (second.clone(), "swapped")
        } else {
            (first.clone(), "listed")
        };
        construction.scenarios.push(Scenario {
            label: format!("matching {outcome} on the {which} metric"),
            outcome,
            metric,
        });
    }
    Ok(construction)
}

/// Two agents with opposite preferences, opening costs 1 and 100. Opening one
/// facility fails when the agents are far apart; opening both fails when they
/// sit on top of each other.
pub fn facility_location_unbounded<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let big = params.big_l;
    if !(big >= 2.0 && big.is_finite()) {
        return Err(Error::OutOfRange(format!("L = {big} must be at least 2")));
    }
    let eps = small_epsilon(&params, 1.0)?;
    let (x, y) = (0, 1);
    let far_l = FacilityDistances::from_upper(2, &[T::of(big)])?;
    let near_l = FacilityDistances::from_upper(2, &[T::of(eps)])?;
    let profile = PreferenceProfile::from_indices(2, &[vec![x, y], vec![y, x]])?;
    let apart = FullMetric::new(rows(&[&[1.0, big], &[big, 1.0]]), far_l.clone())?;
    let together = FullMetric::new(rows(&[&[eps, eps], &[eps, eps]]), near_l)?;
    let problem = AssignmentProblem::facility_location(2, vec![T::of(1.0), T::of(100.0)])?;
    let scenarios = vec![
        Scenario {
            label: "open X only".into(),
            outcome: assign(&[x, x]),
            metric: apart.clone(),
        },
        Scenario {
            label: "open Y only".into(),
            outcome: assign(&[y, y]),
            metric: apart.clone(),
        },
        Scenario {
            label: "open both".into(),
            outcome: assign(&[x, y]),
            metric: together,
        },
        Scenario {
            label: "open both, agents crossed".into(),
            outcome: assign(&[y, x]),
            metric: apart.clone(),
        },
    ];
    Ok(Construction {
        name: ConstructionName::FacilityLocationUnbounded,
        params,
        facilities: names(&["X", "Y"]),
        profile,
        l: far_l,
        problem,
        objective: Objective::Sum,
        metric: Some(apart),
        scenarios,
    })
}

/// `q` agents `X > Y > Z`, `q` agents `Y > X > Z`, one agent `Z > X > Y`,
/// two facilities to open, every agent on top of its first choice. Each pair
/// of open facilities leaves some group far from home on a suitable metric.
pub fn kmedian_lb<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let q = params.q;
    let big = params.big_l;
    if q == 0 {
        return Err(Error::OutOfRange("q must be positive".into()));
    }
    if !(big >= 1.0 && big.is_finite()) {
        return Err(Error::OutOfRange(format!("L = {big} must be at least 1")));
    }
    let (x, y, z) = (0, 1, 2);
    let mut rankings = Vec::new();
    repeat(&mut rankings, q, &[x, y, z]);
    repeat(&mut rankings, q, &[y, x, z]);
    repeat(&mut rankings, 1, &[z, x, y]);
    let profile = PreferenceProfile::from_indices(3, &rankings)?;
    let stretched = FacilityDistances::from_upper(3, &[T::one(), T::of(big), T::of(big)])?;
    let unit = FacilityDistances::from_upper(3, &[T::one(), T::one(), T::one()])?;
    let at_tops = |l: &FacilityDistances<T>| {
        let rows = profile
            .rankings()
            .iter()
            .map(|r| l.facilities().map(|f| l.get(r[0], f).clone()).collect())
            .collect();
        FullMetric::new(rows, l.clone())
    };
    let far = at_tops(&stretched)?;
    let near = at_tops(&unit)?;
    let n = 2 * q + 1;
    // each agent goes to the open facility it ranks higher
    let serve = |open: [usize; 2]| {
        Assignment(
            profile
                .rankings()
                .iter()
                .map(|r| *r.iter().find(|f| open.contains(&f.0)).expect("open facility"))
                .collect(),
        )
    };
    let scenarios = vec![
        Scenario {
            label: "open X and Y".into(),
            outcome: serve([x, y]),
            metric: far.clone(),
        },
        Scenario {
            label: "open X and Z".into(),
            outcome: serve([x, z]),
            metric: near.clone(),
        },
        Scenario {
            label: "open Y and Z".into(),
            outcome: serve([y, z]),
            metric: near,
        },
    ];
    Ok(Construction {
        name: ConstructionName::KmedianLb,
        params,
        facilities: names(&["X", "Y", "Z"]),
        profile,
        l: stretched,
        problem: AssignmentProblem::k_median(n, 3, 2)?,
        objective: Objective::Sum,
        metric: Some(far),
        scenarios,
    })
}

/// Both agents rank `X > Y`. Whoever is sent to `Y` may be the agent near
/// `X`, at distance 2 from `Y`, while the other sits at distance 1 from both.
pub fn egalitarian_lb<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let eps = small_epsilon(&params, 1.0)?;
    let l = FacilityDistances::from_upper(2, &[T::of(2.0)])?;
    let profile = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![0, 1]])?;
    let middle = [1.0, 1.0];
    let near_x = [eps, 2.0];
    let scenarios = vec![
        Scenario {
            label: "agent 1 to X".into(),
            outcome: assign(&[0, 1]),
            metric: FullMetric::new(rows(&[&middle, &near_x]), l.clone())?,
        },
        Scenario {
            label: "agent 2 to X".into(),
            outcome: assign(&[1, 0]),
            metric: FullMetric::new(rows(&[&near_x, &middle]), l.clone())?,
        },
    ];
    Ok(Construction {
        name: ConstructionName::EgalitarianLb,
        params,
        facilities: names(&["X", "Y"]),
        profile,
        problem: AssignmentProblem::matching_egalitarian(2, 2)?,
        objective: Objective::Percentile(1.0),
        metric: Some(scenarios[0].metric.clone()),
        scenarios,
        l,
    })
}

/// Both agents rank `F1 > F2` with `l(F1, F2) = 2`. Either matching costs 3
/// on a metric where the agent kept at `F1` is equidistant and the other sits
/// on `F1`.
pub fn matching_lb3<T: Scalar>(params: Params) -> Result<Construction<T>> {
    let l = FacilityDistances::from_upper(2, &[T::of(2.0)])?;
    let profile = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![0, 1]])?;
    let middle = [1.0, 1.0];
    let on_first = [0.0, 2.0];
    let scenarios = vec![
        Scenario {
            label: "agent 1 to F1".into(),
            outcome: assign(&[0, 1]),
            metric: FullMetric::new(rows(&[&middle, &on_first]), l.clone())?,
        },
        Scenario {
            label: "agent 2 to F1".into(),
            outcome: assign(&[1, 0]),
            metric: FullMetric::new(rows(&[&on_first, &middle]), l.clone())?,
        },
    ];
    Ok(Construction {
        name: ConstructionName::MatchingLb3,
        params,
        facilities: names(&["F1", "F2"]),
        profile,
        problem: AssignmentProblem::matching_min_cost(2, 2)?,
        objective: Objective::Sum,
        metric: None,
        scenarios,
        l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::social_choice::{evaluate_percentile_cost, sum_winner_for_profile};

    fn ratios(c: &Construction<f64>) -> Vec<f64> {
        c.scenarios
            .iter()
            .map(|s| c.ratio(&s.outcome, &s.metric).unwrap().to_f64())
            .collect()
    }

    #[test]
    fn names_round_trip() {
        for name in ConstructionName::ALL {
            assert_eq!(name.name().parse::<ConstructionName>().unwrap(), name);
            let c = generate::<f64>(name, Params::default()).unwrap();
            assert!(c.metrics_consistent(), "{name}");
        }
        assert!(matches!("nope".parse::<ConstructionName>(), Err(Error::Unknown { .. })));
    }

    #[test]
    fn params_parse() {
        let p = Params::default().parse_overrides("q=5, eps=1e-3,L=10").unwrap();
        assert_eq!((p.q, p.epsilon, p.big_l), (5, 1e-3, 10.0));
        assert!(Params::default().parse_overrides("r=1").is_err());
        assert!(Params::default().parse_overrides("q=x").is_err());
    }

    #[test]
    fn sum5_ratio_formula() {
        let params = Params {
            q: 10,
            epsilon: 1e-2,
            ..Params::default()
        };
        let c = sum5_tight::<f64>(params).unwrap();
        assert_eq!(c.profile.num_agents(), 21);
        let expected = (10.0 * (5.0 - 4e-2) + 1.0) / 11.0;
        assert!((ratios(&c)[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn topchoice_medians() {
        let c = median_topchoice_bad::<f64>(Params::default()).unwrap();
        let d = c.metric.as_ref().unwrap();
        assert_eq!(evaluate_percentile_cost(c.facility("W"), d, 0.5).unwrap(), 5.0);
        assert_eq!(evaluate_percentile_cost(c.facility("X"), d, 0.5).unwrap(), 1.0);
        let w = sum_winner_for_profile(&c.profile, &c.l).unwrap().winner;
        assert_eq!(w, c.facility("W"));
        assert_eq!(ratios(&c), vec![5.0]);
    }

    #[test]
    fn median_matching_every_outcome_is_bad() {
        let params = Params {
            epsilon: 1e-3,
            ..Params::default()
        };
        let c = median_matching_unbounded::<f64>(params).unwrap();
        assert_eq!(c.scenarios.len(), 6);
        for r in ratios(&c) {
            assert!(r >= 500.0 - 1e-6, "{r}");
        }
    }

    #[test]
    fn facility_location_cases() {
        let c = facility_location_unbounded::<f64>(Params::default()).unwrap();
        let r = ratios(&c);
        assert!((r[0] - (1e6 + 2.0) / 103.0).abs() < 1e-9);
        assert!((r[1] - (1e6 + 101.0) / 103.0).abs() < 1e-9);
        assert!((r[2] - (101.0 + 2e-6) / (1.0 + 2e-6)).abs() < 1e-9);
    }

    #[test]
    fn kmedian_pairs() {
        let params = Params {
            q: 5,
            ..Params::default()
        };
        let c = kmedian_lb::<f64>(params).unwrap();
        assert_eq!(ratios(&c), vec![1e6 / 5.0, 5.0, 5.0]);
    }

    #[test]
    fn matching_pairs() {
        assert_eq!(
            ratios(&egalitarian_lb::<f64>(Params::default()).unwrap()),
            vec![2.0, 2.0]
        );
        assert_eq!(ratios(&matching_lb3::<f64>(Params::default()).unwrap()), vec![3.0, 3.0]);
    }

    #[test]
    fn bad_parameters_refused() {
        let zero = Params {
            epsilon: 0.0,
            ..Params::default()
        };
        assert!(sum5_tight::<f64>(zero).is_err());
        let no_q = Params {
            q: 0,
            ..Params::default()
        };
        assert!(kmedian_lb::<f64>(no_q).is_err());
    }
}
