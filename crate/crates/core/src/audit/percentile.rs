use crate::audit::ratio::{recover_scaled, RatioOutcome, RatioProgram};
use crate::audit::{
    audit_in, exact_image, sample_consistent_metric, witness_metric, Alternative, AuditReport, Distortion, Objective,
};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::model::{
    agent_constraints, distant_metric, AgentInequality, Facility, FacilityDistances, FullMetric, PreferenceProfile,
};
use crate::scalar::{cmp_scalar, max_of, Scalar};
use crate::social_choice::{evaluate_percentile_cost, percentile_rank};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::PercentileOutOfRange(alpha));
    }
    if alpha < 0.5 {
        return Err(Error::UnboundedPercentileRegime(alpha));
    }
    Ok(())
}

/// Smallest possible `d(i, x)` for an agent with these constraints, and a row
/// attaining it.
fn closest_row<T: Scalar>(rows: &[AgentInequality<T>], m: usize, x: Facility) -> Result<(T, Vec<T>)> {
    let mut lp = LinearProgram::new(m);
    for r in rows {
        lp.add_constraint(
            r.terms.iter().map(|(f, c)| (f.0, c.clone())).collect(),
            Relation::Le,
            r.rhs.clone(),
        );
    }
    lp.set_objective(x.0, -T::one());
    let (value, mut row) = lp
        .solve()?
        .optimal()
        .ok_or_else(|| Error::LinearProgram("agent distance polytope has no closest point".into()))?;
    let value = -value;
    // a reachable facility must read as exactly zero, or an unbounded ratio
    // would come back as a huge finite one on the witness
    if value <= T::pivot_tolerance() || row[x.0] <= T::pivot_tolerance() {
        row[x.0] = T::zero();
        return Ok((T::zero(), row));
    }
    Ok((value, row))
}

/// Exact worst-case ratio of `w`'s `alpha`-percentile distance to the best
/// facility's, for `1/2 <= alpha <= 1`.
///
/// With `k` the order-statistic rank, any metric has an agent `i` at least as
/// far from `w` as `w`'s `k`-th distance and at most as far from `x` as `x`'s
/// `k`-th distance. The other `k - 1` agents counted by `x` cannot be closer
/// to `x` than their own minima allow, so the ratio is at most
/// `d(i,w) / max(d(i,x), s)` with `s` the `(k-1)`-th smallest minimum among
/// the others. That bound is a small linear-fractional program per agent
/// class, and it is attained by putting those `k - 1` agents at their closest
/// points and everybody else far away.
pub fn audit_percentile_social_choice<T: Scalar>(
    w: Facility,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    alpha: f64,
) -> Result<AuditReport<T>> {
    audit_in(
        l.upper_values(),
        || percentile_audit(w, profile, l, alpha),
        || percentile_audit(w, profile, &l.map(exact_image), alpha),
    )
}

fn percentile_audit<T: Scalar>(
    w: Facility,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    alpha: f64,
) -> Result<AuditReport<T>> {
    check_alpha(alpha)?;
    let m = l.len();
    let n = profile.num_agents();
    if profile.num_facilities() != m {
        return Err(Error::Dimension(format!(
            "profile ranks {} facilities but the distance matrix has {m}",
            profile.num_facilities()
        )));
    }
    if w.0 >= m {
        return Err(Error::OutOfRange(format!("facility {w}")));
    }
    if n == 0 {
        return Err(Error::Dimension("percentile audit needs at least one agent".into()));
    }
    let k = percentile_rank(n, alpha)?;
    let classes = profile.ranking_classes();
    let mut class_of = vec![0; n];
    for (c, (_, members)) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let blocks: Vec<_> = classes
        .iter()
        .map(|(r, _)| agent_constraints(r, profile.is_top_only(), l))
        .collect();
    let far_floor = max_of(l.max_distance(), T::one());

    let mut candidates = Vec::new();
    for x in l.facilities().filter(|&x| x != w) {
        let closest: Vec<(T, Vec<T>)> = blocks.iter().map(|b| closest_row(b, m, x)).collect::<Result<_>>()?;
        // agents ordered by how close they can get to x
        let mut by_reach: Vec<usize> = (0..n).collect();
        by_reach.sort_by(|&a, &b| cmp_scalar(&closest[class_of[a]].0, &closest[class_of[b]].0));

        let mut best: Option<(Distortion<T>, Option<FullMetric<T>>)> = None;
        for (c, (_, members)) in classes.iter().enumerate() {
            let pivot = members[0];
            let helpers: Vec<usize> = by_reach.iter().copied().filter(|&j| j != pivot).take(k - 1).collect();
            let s = helpers.last().map_or_else(T::zero, |&j| closest[class_of[j]].0.clone());

            let mut p = RatioProgram::new(m);
            let tau = p.tau();
            p.add_agent(0, &blocks[c]);
            p.add_objective(w.0, T::one());
            p.add_normalization(vec![(x.0, T::one())]);
            if s.is_positive() {
                p.add_normalization(vec![(tau, s.clone())]);
            }
            let pivot_row = match p.solve()? {
                RatioOutcome::Unbounded => Some((
                    Distortion::Unbounded,
                    l.facilities().map(|f| l.get(x, f).clone()).collect(),
                )),
                RatioOutcome::Optimal { value, y, tau } => {
                    if recover_scaled(&value, &tau)? {
                        let row: Vec<T> = y[..m].iter().map(|v| v.clone() / tau.clone()).collect();
                        Some((Distortion::Finite(value), row))
                    } else {
                        if best.is_none() {
                            best = Some((Distortion::Finite(value), None));
                        }
                        None
                    }
                }
            };
            let Some((value, row)) = pivot_row else { continue };
            if best.as_ref().is_some_and(|(b, _)| value.cmp_value(b).is_le()) {
                continue;
            }
            let mut rows: Vec<Option<Vec<T>>> = vec![None; n];
            for &j in &helpers {
                rows[j] = Some(closest[class_of[j]].1.clone());
            }
            rows[pivot] = Some(row);
            let far = rows
                .iter()
                .flatten()
                .flatten()
                .fold(far_floor.clone(), |acc, v| max_of(acc, v.clone()));
            let rows = rows
                .into_iter()
                .map(|r| r.unwrap_or_else(|| vec![far.clone(); m]))
                .collect();
            best = Some((value, Some(witness_metric(rows, l)?)));
        }
        let (value, witness) = best.unwrap_or((Distortion::Finite(T::one()), None));
        candidates.push((Alternative::Facility(x), value, witness));
    }
    Ok(AuditReport::assemble(
        Objective::Percentile(alpha),
        true,
        distant_metric(n, l),
        candidates,
    ))
}

/// `pc(w) / min_F pc(F)` on a concrete metric.
pub fn realized_percentile_distortion<T: Scalar>(w: Facility, d: &FullMetric<T>, alpha: f64) -> Result<Distortion<T>> {
    let mut best: Option<T> = None;
    for f in d.facility_distances().facilities() {
        let c = evaluate_percentile_cost(f, d, alpha)?;
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    Ok(Distortion::ratio(
        evaluate_percentile_cost(w, d, alpha)?,
        best.expect("at least one facility"),
    ))
}

/// Best ratio found over `samples` seeded consistent metrics. Only a lower
/// bound on the worst case.
pub fn sampled_percentile_lower_bound<T: Scalar>(
    w: Facility,
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
    alpha: f64,
    samples: usize,
    seed: u64,
) -> Result<AuditReport<T>> {
    check_alpha(alpha)?;
    let mut value = Distortion::Finite(T::one());
    let mut witness = distant_metric(profile.num_agents(), l);
    for s in 0..samples as u64 {
        let d = sample_consistent_metric(profile, l, seed.wrapping_add(s))?;
        let r = realized_percentile_distortion(w, &d, alpha)?;
        if r.cmp_value(&value).is_gt() {
            value = r;
            witness = d;
        }
    }
    Ok(AuditReport {
        objective: Objective::Percentile(alpha),
        value,
        witness,
        exact: false,
        worst: None,
        breakdown: Vec::new(),
    })
}
