//! Regenerates every named construction and checks its documented number.

use std::fmt;

use crate::audit::{audit_additive_assignment, audit_percentile_social_choice, audit_sum_social_choice, Distortion};
use crate::constructions::{generate, Construction, ConstructionName, Params};
use crate::error::Result;
use crate::model::{Facility, FacilityDistances, PreferenceProfile};
use crate::social_choice::{median_winner, sum_winner_for_profile, DistancePartialOrder};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub example: String,
    pub claim: String,
    pub observed: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} (observed {})",
            self.example, self.claim, self.observed
        )
    }
}

struct Recorder<'a> {
    example: &'a str,
    checks: Vec<Check>,
}

impl Recorder<'_> {
    fn check(&mut self, claim: impl Into<String>, observed: impl fmt::Display, passed: bool) {
        self.checks.push(Check {
            example: self.example.into(),
            claim: claim.into(),
            observed: observed.to_string(),
            passed,
        });
    }

    fn consistent(&mut self, c: &Construction<f64>) {
        self.check(
            "listed metrics are consistent",
            c.metrics_consistent(),
            c.metrics_consistent(),
        );
    }
}

/// Parameters each example is checked at.
pub fn documented_params(name: ConstructionName) -> Params {
    let base = Params::default();
    match name {
        ConstructionName::Sum5Tight => Params {
            q: 1000,
            epsilon: 1e-4,
            ..base
        },
        ConstructionName::MedianMatchingUnbounded => Params { epsilon: 1e-3, ..base },
        ConstructionName::FacilityLocationUnbounded => Params { big_l: 1e6, ..base },
        ConstructionName::KmedianLb => Params { q: 5, ..base },
        ConstructionName::EgalitarianLb => Params { epsilon: 1e-6, ..base },
        _ => base,
    }
}

fn scenario_ratios(c: &Construction<f64>) -> Result<Vec<(String, f64)>> {
    c.scenarios
        .iter()
        .map(|s| Ok((s.label.clone(), c.ratio(&s.outcome, &s.metric)?.to_f64())))
        .collect()
}

pub fn run_example(name: ConstructionName, params: Params) -> Result<Vec<Check>> {
    let c = generate::<f64>(name, params)?;
    let mut r = Recorder {
        example: name.name(),
        checks: Vec::new(),
    };
    r.consistent(&c);
    match name {
        ConstructionName::Sum5Tight => {
            let order = DistancePartialOrder::from_distances(&c.l);
            let w = median_winner::<f64>(&c.profile, &order)?.winner;
            r.check(
                "augmented majority rule picks W",
                c.facilities.name(w),
                w == c.facility("W"),
            );
            let q = params.q as f64;
            let expected = (q * (5.0 - 4.0 * params.epsilon) + 1.0) / (q + 1.0);
            let realized = c.ratio(&c.scenarios[0].outcome, &c.scenarios[0].metric)?.to_f64();
            r.check(
                format!("sum ratio of W equals (q(5-4eps)+1)/(q+1) = {expected:.6}"),
                realized,
                (realized - expected).abs() <= 1e-9,
            );
            let audit = audit_sum_social_choice(w, &c.profile, &c.l)?.value.to_f64();
            r.check(
                "worst-case sum distortion of W is at most 5",
                audit,
                audit <= 5.0 + 1e-6 && audit >= realized - 1e-6,
            );
        }
        ConstructionName::MedianTopchoiceBad => {
            let w = sum_winner_for_profile(&c.profile.to_top_only(), &c.l)?.winner;
            r.check("projected-sum rule picks W", c.facilities.name(w), w == c.facility("W"));
            let realized = c.ratio(&c.scenarios[0].outcome, &c.scenarios[0].metric)?.to_f64();
            r.check("median ratio of W on the listed metric is 5", realized, realized == 5.0);
            let order = DistancePartialOrder::from_distances(&c.l);
            let v = median_winner::<f64>(&c.profile, &order)?.winner;
            let audit = audit_percentile_social_choice(v, &c.profile, &c.l, 0.5)?.value.to_f64();
            r.check(
                format!(
                    "augmented majority winner {} has median distortion at most 3",
                    c.facilities.name(v)
                ),
                audit,
                audit <= 3.0 + 1e-6,
            );
        }
        ConstructionName::MedianMatchingUnbounded => {
            let target = 1.0 / (2.0 * params.epsilon);
            for (label, ratio) in scenario_ratios(&c)? {
                r.check(format!("{label}: median ratio at least 400"), ratio, ratio >= 400.0);
            }
            let star = &c.scenarios[0];
            let ratio = c.ratio(&star.outcome, &star.metric)?.to_f64();
            r.check(
                format!("optimal matching on one metric has ratio 1/(2 eps) = {target} on the other"),
                ratio,
                (ratio - target).abs() <= 1e-6 * target,
            );
        }
        ConstructionName::FacilityLocationUnbounded => {
            let ratios = scenario_ratios(&c)?;
            for (label, ratio) in &ratios[..2] {
                r.check(format!("{label}: ratio at least 1000"), ratio, *ratio >= 1000.0);
            }
            let opt = c.optimum(&c.scenarios[0].metric)?.0;
            r.check(
                "far-apart optimum opens both at cost 103",
                opt,
                (opt - 103.0).abs() <= 1e-9,
            );
            let e = params.epsilon;
            let both = (101.0 + 2.0 * e) / (1.0 + 2.0 * e);
            r.check(
                format!("{}: ratio (101 + 2 eps)/(1 + 2 eps)", ratios[2].0),
                ratios[2].1,
                (ratios[2].1 - both).abs() <= 1e-9,
            );
        }
        ConstructionName::KmedianLb => {
            let q = params.q as f64;
            for (label, ratio) in scenario_ratios(&c)? {
                r.check(format!("{label}: ratio at least q = {q}"), ratio, ratio >= q - 1e-9);
            }
        }
        ConstructionName::EgalitarianLb => {
            for (label, ratio) in scenario_ratios(&c)? {
                r.check(
                    format!("{label}: max-cost ratio at least 2 - 1e-3"),
                    ratio,
                    ratio >= 2.0 - 1e-3,
                );
            }
        }
        ConstructionName::MatchingLb3 => {
            for s in &c.scenarios {
                let audit = audit_additive_assignment(&s.outcome, &c.profile, &c.l, &c.problem)?
                    .value
                    .to_f64();
                r.check(
                    format!("{}: worst-case distortion is 3", s.label),
                    audit,
                    (audit - 3.0).abs() <= 1e-6,
                );
                let ratio = c.ratio(&s.outcome, &s.metric)?.to_f64();
                r.check(
                    format!("{}: listed metric attains 3", s.label),
                    ratio,
                    (ratio - 3.0).abs() <= 1e-9,
                );
            }
        }
    }
    Ok(r.checks)
}

/// Two agents with opposite preferences over two facilities: either winner
/// has distortion exactly 3.
pub fn split_pair_checks() -> Result<Vec<Check>> {
    let l = FacilityDistances::<f64>::from_upper(2, &[2.0])?;
    let p = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![1, 0]])?;
    let mut r = Recorder {
        example: "split_pair",
        checks: Vec::new(),
    };
    for w in [Facility(0), Facility(1)] {
        let v = audit_sum_social_choice(w, &p, &l)?.value;
        let observed = v.to_f64();
        r.check(
            format!("winner {w} has sum distortion 3"),
            observed,
            matches!(v, Distortion::Finite(x) if (x - 3.0).abs() <= 1e-6),
        );
    }
    Ok(r.checks)
}

/// Every example at its documented parameters, plus the split pair.
pub fn run_all() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in ConstructionName::ALL {
        match run_example(name, documented_params(name)) {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(Check {
                example: name.name().into(),
                claim: "construction runs".into(),
                observed: e.to_string(),
                passed: false,
            }),
        }
    }
    match split_pair_checks() {
        Ok(c) => checks.extend(c),
        Err(e) => checks.push(Check {
            example: "split_pair".into(),
            claim: "construction runs".into(),
            observed: e.to_string(),
            passed: false,
        }),
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_documented_number_reproduces() {
        let checks = run_all();
        for c in &checks {
            assert!(c.passed, "{c}");
        }
        assert!(checks.len() > 20);
    }
}
