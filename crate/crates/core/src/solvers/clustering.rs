use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances};
use crate::scalar::{approx_eq, max_of, Scalar};
use crate::solvers::SolverResult;

pub const K_CENTER_GREEDY_BETA: f64 = 2.0;
pub const K_MEDIAN_LOCAL_SEARCH_BETA: f64 = 5.0;
pub const FACILITY_LOCATION_GREEDY_BETA: f64 = 1.861;
pub const MAX_EXACT_SUBSETS: u128 = 100_000;
pub const MAX_EXACT_FACILITY_LOCATION: usize = 16;

/// Each agent to its nearest facility in `open` (lowest index on ties).
fn nearest<T: Scalar>(dist: &[Vec<T>], open: &[Facility]) -> Vec<Facility> {
    let mut sorted = open.to_vec();
    sorted.sort();
    dist.iter()
        .map(|row| {
            let mut best = sorted[0];
            for &f in &sorted[1..] {
                if row[f.0] < row[best.0] && !approx_eq(&row[f.0], &row[best.0]) {
                    best = f;
                }
            }
            best
        })
        .collect()
}

fn service_cost<T: Scalar>(dist: &[Vec<T>], x: &[Facility]) -> T {
    x.iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, f)| acc + dist[i][f.0].clone())
}

fn check_k(k: usize, m: usize, solver: &'static str) -> Result<()> {
    if k == 0 || k > m {
        return Err(Error::SolverMismatch {
            solver,
            reason: format!("k = {k} is outside 1..={m}"),
        });
    }
    Ok(())
}

/// Farthest-point seeding over the agents' sites, starting from the
/// lowest-index facility that hosts an agent; agents then go to their nearest
/// chosen center. Radius at most twice the optimum.
pub fn k_center_greedy<T: Scalar>(sites: &[Facility], l: &FacilityDistances<T>, k: usize) -> Result<SolverResult<T>> {
    check_k(k, l.len(), "k_center_greedy")?;
    if sites.is_empty() {
        return Ok(SolverResult::approximate(
            Assignment(Vec::new()),
            T::zero(),
            K_CENTER_GREEDY_BETA,
        ));
    }
    let mut hosts = sites.to_vec();
    hosts.sort();
    hosts.dedup();
    let mut centers = vec![hosts[0]];
    let gap = |h: Facility, centers: &[Facility]| {
        centers
            .iter()
            .map(|&c| l.get(h, c).clone())
            .reduce(|a, b| if b < a { b } else { a })
            .expect("at least one center")
    };
    while centers.len() < k {
        let mut far: Option<(Facility, T)> = None;
        for &h in &hosts {
            let g = gap(h, &centers);
            if far.as_ref().is_none_or(|(_, best)| g > *best) {
                far = Some((h, g));
            }
        }
        match far {
            Some((h, g)) if g > T::zero() => centers.push(h),
            _ => break,
        }
    }
    let dist: Vec<Vec<T>> = sites
        .iter()
        .map(|&s| l.facilities().map(|f| l.get(s, f).clone()).collect())
        .collect();
    let x = nearest(&dist, &centers);
    let radius = x
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, f)| max_of(acc, dist[i][f.0].clone()));
    Ok(SolverResult::approximate(Assignment(x), radius, K_CENTER_GREEDY_BETA))
}

fn binomial(m: usize, k: usize) -> u128 {
    let k = k.min(m - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((m - i) as u128) / (i as u128 + 1))
}

/// Next k-subset of `0..m` in lexicographic order.
fn next_subset(s: &mut [usize], m: usize) -> bool {
    let k = s.len();
    for pos in (0..k).rev() {
        if s[pos] < m - k + pos {
            s[pos] += 1;
            for q in pos + 1..k {
                s[q] = s[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn open_cost<T: Scalar>(dist: &[Vec<T>], open: &[Facility]) -> T {
    service_cost(dist, &nearest(dist, open))
}

/// Sum-of-distances clustering with at most `k` open facilities. Exact by
/// enumerating `k`-subsets when there are at most 10^5 of them, otherwise
/// greedy seeding followed by single-swap local search.
pub fn k_median_solver<T: Scalar>(dist: &[Vec<T>], m: usize, k: usize) -> Result<SolverResult<T>> {
    check_k(k, m, "k_median")?;
    if dist.is_empty() {
        return Ok(SolverResult::exact(Assignment(Vec::new()), T::zero()));
    }
    if binomial(m, k) <= MAX_EXACT_SUBSETS {
        let mut subset: Vec<usize> = (0..k).collect();
        let mut best: Option<(T, Vec<Facility>)> = None;
        loop {
            let open: Vec<Facility> = subset.iter().copied().map(Facility).collect();
            let c = open_cost(dist, &open);
            if best.as_ref().is_none_or(|(b, _)| c < *b && !approx_eq(&c, b)) {
                best = Some((c, open));
            }
            if !next_subset(&mut subset, m) {
                break;
            }
        }
        let (c, open) = best.expect("at least one subset");
        return Ok(SolverResult::exact(Assignment(nearest(dist, &open)), c));
    }
    let mut open: Vec<Facility> = Vec::new();
    while open.len() < k {
        let mut pick: Option<(T, Facility)> = None;
        for f in (0..m).map(Facility).filter(|f| !open.contains(f)) {
            let mut trial = open.clone();
            trial.push(f);
            let c = open_cost(dist, &trial);
            if pick.as_ref().is_none_or(|(b, _)| c < *b) {
                pick = Some((c, f));
            }
        }
        open.push(pick.expect("k <= m leaves a candidate").1);
    }
    let mut current = open_cost(dist, &open);
    let improves = |c: &T, cur: &T| *c < *cur && !approx_eq(c, cur);
    'search: loop {
        for pos in 0..open.len() {
            for f in (0..m).map(Facility).filter(|f| !open.contains(f)) {
                let mut trial = open.clone();
                trial[pos] = f;
                let c = open_cost(dist, &trial);
                if improves(&c, &current) {
                    open = trial;
                    current = c;
                    continue 'search;
                }
            }
        }
        break;
    }
    Ok(SolverResult::approximate(
        Assignment(nearest(dist, &open)),
        current,
        K_MEDIAN_LOCAL_SEARCH_BETA,
    ))
}

/// Uncapacitated facility location. Exact over all open sets when there are
/// at most 16 facilities; otherwise the star greedy that repeatedly opens the
/// facility with the cheapest cost per newly served agent.
pub fn facility_location_solver<T: Scalar>(dist: &[Vec<T>], opening: &[T]) -> Result<SolverResult<T>> {
    let m = opening.len();
    if m == 0 {
        return Err(Error::Dimension("no facilities".into()));
    }
    let total = |x: &[Facility]| {
        let mut used = vec![false; m];
        for f in x {
            used[f.0] = true;
        }
        let open = (0..m)
            .filter(|&f| used[f])
            .fold(T::zero(), |acc, f| acc + opening[f].clone());
        open + service_cost(dist, x)
    };
    if dist.is_empty() {
        return Ok(SolverResult::exact(Assignment(Vec::new()), T::zero()));
    }
    if m <= MAX_EXACT_FACILITY_LOCATION {
        let mut best: Option<(T, Vec<Facility>)> = None;
        for mask in 1u32..(1 << m) {
            let open: Vec<Facility> = (0..m).filter(|f| mask >> f & 1 == 1).map(Facility).collect();
            let x = nearest(dist, &open);
            let c = total(&x);
            if best.as_ref().is_none_or(|(b, _)| c < *b && !approx_eq(&c, b)) {
                best = Some((c, x));
            }
        }
        let (c, x) = best.expect("at least one open set");
        return Ok(SolverResult::exact(Assignment(x), c));
    }
    let n = dist.len();
    let mut served = vec![false; n];
    let mut opened = vec![false; m];
    while served.iter().any(|s| !s) {
        // (cost, count) of the cheapest star, compared as cost/count
        let mut pick: Option<(T, usize, usize)> = None;
        for f in 0..m {
            let mut waiting: Vec<&T> = (0..n).filter(|&i| !served[i]).map(|i| &dist[i][f]).collect();
            waiting.sort_by(|a, b| crate::scalar::cmp_scalar(*a, *b));
            let mut acc = if opened[f] { T::zero() } else { opening[f].clone() };
            for (t, d) in waiting.iter().enumerate() {
                acc = acc + (*d).clone();
                let count = t + 1;
                let better = pick
                    .as_ref()
                    .is_none_or(|(c, k, _)| acc.clone() * T::of_usize(*k) < c.clone() * T::of_usize(count));
                if better {
                    pick = Some((acc.clone(), count, f));
                }
            }
        }
        let (_, count, f) = pick.expect("an unserved agent remains");
        opened[f] = true;
        let mut waiting: Vec<usize> = (0..n).filter(|&i| !served[i]).collect();
        waiting.sort_by(|&a, &b| crate::scalar::cmp_scalar(&dist[a][f], &dist[b][f]));
        for &i in waiting.iter().take(count) {
            served[i] = true;
        }
    }
    let open: Vec<Facility> = (0..m).filter(|&f| opened[f]).map(Facility).collect();
    let x = nearest(dist, &open);
    let c = total(&x);
    Ok(SolverResult::approximate(
        Assignment(x),
        c,
        FACILITY_LOCATION_GREEDY_BETA,
    ))
}
