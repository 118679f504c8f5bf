use crate::audit::ratio::{recover_scaled, RatioOutcome, RatioProgram};
use crate::audit::{
    agents_at_sites, audit_in, exact_image, scaled_rows, witness_metric, Alternative, AuditReport, Distortion,
    Objective,
};
use crate::error::{Error, Result};
use crate::model::{agent_constraints, distant_metric, Facility, FacilityDistances, FullMetric, PreferenceProfile};
use crate::scalar::Scalar;
use crate::social_choice::evaluate_sum_cost;

/// Exact worst-case ratio of `w`'s total distance to the best facility's.
///
/// Agents with identical rankings share one block of variables weighted by
/// their count; averaging their rows keeps any solution feasible and leaves
/// both costs unchanged, so this loses nothing.
pub fn audit_sum_social_choice<T: Scalar>(
    w: Facility,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
) -> Result<AuditReport<T>> {
    audit_in(
        l.upper_values(),
        || sum_audit(w, profile, l),
        || sum_audit(w, profile, &l.map(exact_image)),
    )
}

fn sum_audit<T: Scalar>(w: Facility, profile: &PreferenceProfile, l: &FacilityDistances<T>) -> Result<AuditReport<T>> {
    let m = l.len();
    if profile.num_facilities() != m {
        return Err(Error::Dimension(format!(
            "profile ranks {} facilities but the distance matrix has {m}",
            profile.num_facilities()
        )));
    }
    if w.0 >= m {
        return Err(Error::OutOfRange(format!("facility {w}")));
    }
    let n = profile.num_agents();
    let classes = profile.ranking_classes();
    let mut block_of = vec![0; n];
    for (c, (_, members)) in classes.iter().enumerate() {
        for &i in members {
            block_of[i] = c;
        }
    }
    let blocks: Vec<_> = classes
        .iter()
        .map(|(r, _)| agent_constraints(r, profile.is_top_only(), l))
        .collect();

    let mut candidates = Vec::new();
    for x in l.facilities().filter(|&x| x != w) {
        let mut p = RatioProgram::new(classes.len() * m);
        let mut norm = Vec::new();
        for (c, (_, members)) in classes.iter().enumerate() {
            let weight = T::of_usize(members.len());
            p.add_agent(c * m, &blocks[c]);
            p.add_objective(c * m + w.0, weight.clone());
            norm.push((c * m + x.0, weight));
        }
        p.add_normalization(norm);
        let candidate = match p.solve()? {
            RatioOutcome::Unbounded => (Distortion::Unbounded, Some(agents_at_sites(&vec![x; n], l))),
            RatioOutcome::Optimal { value, y, tau } => {
                let witness = if recover_scaled(&value, &tau)? {
                    Some(witness_metric(scaled_rows(&y, &tau, m, &block_of), l)?)
                } else {
                    None
                };
                (Distortion::Finite(value), witness)
            }
        };
        candidates.push((Alternative::Facility(x), candidate.0, candidate.1));
    }
    Ok(AuditReport::assemble(
        Objective::Sum,
        true,
        distant_metric(n, l),
        candidates,
    ))
}

/// `c(w) / min_F c(F)` on a concrete metric.
pub fn realized_sum_distortion<T: Scalar>(w: Facility, d: &FullMetric<T>) -> Distortion<T> {
    let best = d
        .facility_distances()
        .facilities()
        .map(|f| evaluate_sum_cost(f, d))
        .reduce(|a, b| if b < a { b } else { a })
        .expect("at least one facility");
    Distortion::ratio(evaluate_sum_cost(w, d), best)
}
