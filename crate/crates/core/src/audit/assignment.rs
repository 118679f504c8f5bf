use std::collections::BTreeMap;

use crate::assignment::{Assignment, AssignmentInstance, AssignmentProblem, DistanceCost};
use crate::audit::ratio::{recover_scaled, RatioOutcome, RatioProgram};
use crate::audit::{
    agents_at_sites, audit_in, exact_image, scaled_rows, witness_metric, Alternative, AuditReport, Distortion,
    Objective,
};
use crate::error::{Error, Result};
use crate::model::{
    agent_constraints, distant_metric, AgentInequality, Facility, FacilityDistances, FullMetric, PreferenceProfile,
};
use crate::scalar::{max_of, Scalar};
use crate::solvers::brute_force_optimal;

/// Competing assignments enumerated before the audit refuses.
pub const MAX_AUDIT_ALTERNATIVES: usize = 10_000;

/// Exact worst-case ratio `c(x,d) / min_x' c(x',d)` over consistent metrics
/// for sum or max distance costs plus any facility costs.
///
/// Facility costs do not depend on `d`, so against each alternative the ratio
/// is `(N(d) + a) / (D(d) + b)` with constants `a`, `b`. For max costs the
/// numerator is split by the agent attaining it and the denominator's maximum
/// is bounded agent by agent.
pub fn audit_additive_assignment<T: Scalar>(
    x: &Assignment,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    problem: &AssignmentProblem<T>,
) -> Result<AuditReport<T>> {
    let facility = &problem.cost.facility;
    let scale = l
        .upper_values()
        .into_iter()
        .chain(facility.opening.iter().cloned())
        .chain(facility.penalties.iter().map(|p| p.cost.clone()));
    audit_in(
        scale,
        || assignment_audit(x, profile, l, problem),
        || assignment_audit(x, profile, &l.map(exact_image), &problem.map(exact_image)),
    )
}

fn assignment_audit<T: Scalar>(
    x: &Assignment,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    problem: &AssignmentProblem<T>,
) -> Result<AuditReport<T>> {
    let n = profile.num_agents();
    let m = l.len();
    if problem.num_agents != n || problem.num_facilities != m || profile.num_facilities() != m {
        return Err(Error::Dimension(format!(
            "problem is {} x {}, profile {n} x {}, distances {m}",
            problem.num_agents,
            problem.num_facilities,
            profile.num_facilities()
        )));
    }
    if !problem.is_valid(x) {
        return Err(Error::NoValidAssignment);
    }
    let alternatives = problem.valid_assignments(MAX_AUDIT_ALTERNATIVES)?;
    let blocks: Vec<Vec<AgentInequality<T>>> = (0..n)
        .map(|i| agent_constraints(profile.ranking(i), profile.is_top_only(), l))
        .collect();
    let a = problem.cost.facility.evaluate(x.as_slice());

    let mut candidates = Vec::new();
    for alt in alternatives.into_iter().filter(|alt| alt != x) {
        let b = problem.cost.facility.evaluate(alt.as_slice());
        let (value, witness) = match problem.cost.distance {
            DistanceCost::Sum => sum_against(x, &alt, profile, &blocks, &a, &b, l)?,
            DistanceCost::Max => max_against(x, &alt, &blocks, &a, &b, l)?,
        };
        candidates.push((Alternative::Assignment(alt), value, witness));
    }
    let objective = match problem.cost.distance {
        DistanceCost::Sum => Objective::Sum,
        DistanceCost::Max => Objective::Percentile(1.0),
    };
    Ok(AuditReport::assemble(objective, true, distant_metric(n, l), candidates))
}

type Candidate<T> = (Distortion<T>, Option<FullMetric<T>>);

fn sum_against<T: Scalar>(
    x: &Assignment,
    alt: &Assignment,
    profile: &PreferenceProfile,
    blocks: &[Vec<AgentInequality<T>>],
    a: &T,
    b: &T,
    l: &FacilityDistances<T>,
) -> Result<Candidate<T>> {
    let n = x.len();
    let m = l.len();
    // agents sharing a ranking and both assigned facilities are interchangeable
    let mut classes: BTreeMap<(Vec<Facility>, Facility, Facility), usize> = BTreeMap::new();
    let mut representative = Vec::new();
    let mut block_of = vec![0; n];
    for i in 0..n {
        let key = (profile.ranking(i).to_vec(), x.get(i), alt.get(i));
        let next = classes.len();
        let c = *classes.entry(key).or_insert(next);
        if c == representative.len() {
            representative.push(i);
        }
        block_of[i] = c;
    }
    let mut weights = vec![0usize; representative.len()];
    for &c in &block_of {
        weights[c] += 1;
    }
    let mut p = RatioProgram::new(representative.len() * m);
    let tau = p.tau();
    let mut norm = Vec::new();
    for (c, &i) in representative.iter().enumerate() {
        let weight = T::of_usize(weights[c]);
        p.add_agent(c * m, &blocks[i]);
        p.add_objective(c * m + x.get(i).0, weight.clone());
        norm.push((c * m + alt.get(i).0, weight));
    }
    p.add_objective(tau, a.clone());
    if !b.is_zero() {
        norm.push((tau, b.clone()));
    }
    p.add_normalization(norm);
    recover(p.solve()?, alt, m, &block_of, l)
}

fn max_against<T: Scalar>(
    x: &Assignment,
    alt: &Assignment,
    blocks: &[Vec<AgentInequality<T>>],
    a: &T,
    b: &T,
    l: &FacilityDistances<T>,
) -> Result<Candidate<T>> {
    let n = x.len();
    let m = l.len();
    let block_of: Vec<usize> = (0..n).collect();
    let mut best: Option<Candidate<T>> = None;
    for pivot in 0..n {
        let mut p = RatioProgram::new(n * m);
        let tau = p.tau();
        for (i, rows) in blocks.iter().enumerate() {
            p.add_agent(i * m, rows);
            let mut norm = vec![(i * m + alt.get(i).0, T::one())];
            if !b.is_zero() {
                norm.push((tau, b.clone()));
            }
            p.add_normalization(norm);
        }
        p.add_objective(pivot * m + x.get(pivot).0, T::one());
        p.add_objective(tau, a.clone());
        let candidate = recover(p.solve()?, alt, m, &block_of, l)?;
        if best.as_ref().is_none_or(|(v, _)| candidate.0.cmp_value(v).is_gt()) {
            best = Some(candidate);
        }
    }
    Ok(best.unwrap_or((Distortion::Finite(T::one()), None)))
}

fn recover<T: Scalar>(
    outcome: RatioOutcome<T>,
    alt: &Assignment,
    m: usize,
    block_of: &[usize],
    l: &FacilityDistances<T>,
) -> Result<Candidate<T>> {
    Ok(match outcome {
        // only reachable with every agent sitting on its alternative facility
        RatioOutcome::Unbounded => (Distortion::Unbounded, Some(agents_at_sites(alt.as_slice(), l))),
        RatioOutcome::Optimal { value, y, tau } => {
            let witness = if recover_scaled(&value, &tau)? {
                Some(witness_metric(scaled_rows(&y, &tau, m, block_of), l)?)
            } else {
                None
            };
            (Distortion::Finite(value), witness)
        }
    })
}

/// `c(x,d) / min_x' c(x',d)` on a concrete metric, the minimum found by
/// exhaustive search.
pub fn realized_assignment_distortion<T: Scalar>(
    x: &Assignment,
    d: &FullMetric<T>,
    problem: &AssignmentProblem<T>,
) -> Result<Distortion<T>> {
    let instance = AssignmentInstance::from_metric(problem.clone(), d)?;
    let opt = brute_force_optimal(&instance)?.cost;
    Ok(Distortion::ratio(problem.total_cost(x, d), max_of(opt, T::zero())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::audit_sum_social_choice;
    use crate::model::check_consistency;

    fn fs(v: &[usize]) -> Assignment {
        Assignment(v.iter().copied().map(Facility).collect())
    }

    #[test]
    fn badly_scaled_instance_falls_back_to_exact_arithmetic() {
        use crate::constructions::{generate, ConstructionName, Params};
        let params = Params {
            q: 2,
            ..Params::default()
        };
        let c = generate::<f64>(ConstructionName::KmedianLb, params).unwrap();
        let x = fs(&[0, 0, 1, 1, 0]);
        let r = audit_additive_assignment(&x, &c.profile, &c.l, &c.problem).unwrap();
        assert!(check_consistency(&c.profile, &r.witness));
        let exact =
            audit_additive_assignment(&x, &c.profile, &c.l.map(exact_image), &c.problem.map(exact_image)).unwrap();
        assert_eq!(r.value.to_f64(), exact.value.to_f64());
    }

    #[test]
    fn single_agent_matching_is_one() {
        let l = FacilityDistances::from_upper(2, &[2.0]).unwrap();
        let p = PreferenceProfile::from_indices(2, &[vec![0, 1]]).unwrap();
        let problem = AssignmentProblem::matching_min_cost(1, 2).unwrap();
        let r = audit_additive_assignment(&fs(&[0]), &p, &l, &problem).unwrap();
        assert_eq!(r.value.to_f64(), 1.0);
        let p = PreferenceProfile::from_indices(1, &[vec![0]]).unwrap();
        let l1 = FacilityDistances::from_rows(vec![vec![0.0]]).unwrap();
        let problem = AssignmentProblem::matching_min_cost(1, 1).unwrap();
        let r = audit_additive_assignment(&fs(&[0]), &p, &l1, &problem).unwrap();
        assert_eq!(r.value.to_f64(), 1.0);
        assert!(r.breakdown.is_empty());
    }

    #[test]
    fn both_prefer_first_wrong_matching_is_three() {
        let l = FacilityDistances::from_upper(2, &[2.0]).unwrap();
        let p = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        let problem = AssignmentProblem::matching_min_cost(2, 2).unwrap();
        for x in [fs(&[0, 1]), fs(&[1, 0])] {
            let r = audit_additive_assignment(&x, &p, &l, &problem).unwrap();
            assert!((r.value.to_f64() - 3.0).abs() < 1e-9);
            assert!(check_consistency(&p, &r.witness));
            let realized = realized_assignment_distortion(&x, &r.witness, &problem).unwrap();
            assert!((realized.to_f64() - 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn social_choice_embedding_agrees_with_sum_audit() {
        let l = FacilityDistances::from_upper(3, &[2.0, 3.0, 2.0]).unwrap();
        let p = PreferenceProfile::from_indices(3, &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]]).unwrap();
        let problem = AssignmentProblem::social_choice_sum(3, 3).unwrap();
        for w in (0..3).map(Facility) {
            let a = audit_additive_assignment(&Assignment::constant(3, w), &p, &l, &problem).unwrap();
            let b = audit_sum_social_choice(w, &p, &l).unwrap();
            assert!((a.value.to_f64() - b.value.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn egalitarian_matching_reaches_three() {
        // agent 1 equidistant at (1, 1), agent 2 at (1, 3): max 3 against max 1
        let l = FacilityDistances::from_upper(2, &[2.0]).unwrap();
        let p = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        let problem = AssignmentProblem::matching_egalitarian(2, 2).unwrap();
        let r = audit_additive_assignment(&fs(&[0, 1]), &p, &l, &problem).unwrap();
        assert!((r.value.to_f64() - 3.0).abs() < 1e-9, "{}", r.value);
        let realized = realized_assignment_distortion(&fs(&[0, 1]), &r.witness, &problem).unwrap();
        assert!((realized.to_f64() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn facility_costs_enter_as_constants() {
        let l = FacilityDistances::from_upper(2, &[1.0]).unwrap();
        let p = PreferenceProfile::from_indices(2, &[vec![1, 0]]).unwrap();
        let problem = AssignmentProblem::facility_location(1, vec![1.0, 100.0]).unwrap();
        let r = audit_additive_assignment(&fs(&[1]), &p, &l, &problem).unwrap();
        // with d(X) >= max(d(Y), 1 - d(Y)) the worst case is d = 1/2: 100.5 / 1.5
        assert!((r.value.to_f64() - 67.0).abs() < 1e-9, "{}", r.value);
    }
}
