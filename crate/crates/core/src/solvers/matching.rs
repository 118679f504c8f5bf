use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::model::Facility;
use crate::scalar::{cmp_scalar, max_of, Scalar};
use crate::solvers::SolverResult;

fn check_shape<T>(cost: &[Vec<T>], solver: &'static str) -> Result<usize> {
    let n = cost.len();
    let m = cost.first().map_or(0, Vec::len);
    if cost.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("ragged cost matrix".into()));
    }
    if n > m {
        return Err(Error::SolverMismatch {
            solver,
            reason: format!("{n} rows cannot be matched into {m} columns"),
        });
    }
    Ok(m)
}

/// Minimum-cost assignment of every row to a distinct column (Hungarian
/// method with potentials). Rows may be fewer than columns.
pub fn min_cost_matching<T: Scalar>(cost: &[Vec<T>]) -> Result<SolverResult<T>> {
    let m = check_shape(cost, "min_cost_matching")?;
    let n = cost.len();
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); m + 1];
    // p[j]: 1-based row matched to column j, 0 if free
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<T>> = vec![None; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1].clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|mv| cur < *mv) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| *mj < *d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("a free column remains while rows <= columns");
            for j in 0..=m {
                if used[j] {
                    u[p[j]] = u[p[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(mv) = minv[j].as_mut() {
                    *mv = mv.clone() - delta.clone();
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut x = vec![Facility(0); n];
    for j in 1..=m {
        if p[j] != 0 {
            x[p[j] - 1] = Facility(j - 1);
        }
    }
    let total = x
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, f)| acc + cost[i][f.0].clone());
    Ok(SolverResult::exact(Assignment(x), total))
}

/// Matching minimising the largest used entry: binary search over the sorted
/// distinct entries with a perfect-matching check at each threshold.
pub fn bottleneck_matching<T: Scalar>(cost: &[Vec<T>]) -> Result<SolverResult<T>> {
    let m = check_shape(cost, "bottleneck_matching")?;
    let n = cost.len();
    if n == 0 {
        return Ok(SolverResult::exact(Assignment(Vec::new()), T::zero()));
    }
    let mut values: Vec<T> = cost.iter().flatten().cloned().collect();
    values.sort_by(cmp_scalar);
    values.dedup();
    let (mut lo, mut hi) = (0, values.len() - 1);
    let mut best = perfect_matching(cost, m, &values[hi]).expect("every entry allowed admits a matching");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(cost, m, &values[mid]) {
            Some(x) => {
                best = x;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let bottleneck = best
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, f)| max_of(acc, cost[i][f.0].clone()));
    Ok(SolverResult::exact(Assignment(best), bottleneck))
}

/// Kuhn's augmenting paths restricted to entries `<= threshold`.
fn perfect_matching<T: Scalar>(cost: &[Vec<T>], m: usize, threshold: &T) -> Option<Vec<Facility>> {
    let n = cost.len();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for i in 0..n {
        let mut seen = vec![false; m];
        if !augment(i, cost, threshold, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut x = vec![Facility(0); n];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            x[*i] = Facility(j);
        }
    }
    Some(x)
}

fn augment<T: Scalar>(
    i: usize,
    cost: &[Vec<T>],
    threshold: &T,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for j in 0..seen.len() {
        if seen[j] || cost[i][j] > *threshold {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|k| augment(k, cost, threshold, seen, owner)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn anti_diagonal_is_cheaper() {
        let c = vec![vec![0.0, 5.0], vec![1.0, 9.0]];
        let r = min_cost_matching(&c).unwrap();
        assert_eq!(r.cost, 6.0);
        assert_eq!(r.assignment, Assignment(vec![Facility(1), Facility(0)]));
    }

    #[test]
    fn zero_diagonal_gives_identity() {
        let c = vec![vec![0.0, 2.0, 3.0], vec![4.0, 0.0, 1.0], vec![7.0, 7.0, 0.0]];
        let r = min_cost_matching(&c).unwrap();
        assert_eq!(r.cost, 0.0);
        assert_eq!(r.assignment, Assignment((0..3).map(Facility).collect()));
    }

    #[test]
    fn all_equal_costs() {
        let c = vec![vec![2.5; 4]; 4];
        assert_eq!(min_cost_matching(&c).unwrap().cost, 10.0);
        assert_eq!(bottleneck_matching(&c).unwrap().cost, 2.5);
    }

    #[test]
    fn rectangular_and_oversized() {
        let c = vec![vec![3.0, 1.0, 2.0]];
        assert_eq!(min_cost_matching(&c).unwrap().assignment, Assignment(vec![Facility(1)]));
        let tall = vec![vec![1.0], vec![2.0]];
        assert!(min_cost_matching(&tall).is_err());
        assert!(bottleneck_matching(&tall).is_err());
    }

    #[test]
    fn bottleneck_two_either_way() {
        let eps = 1e-6;
        let c = vec![vec![1.0, 2.0], vec![eps, 2.0]];
        assert_eq!(bottleneck_matching(&c).unwrap().cost, 2.0);
        assert_eq!(bottleneck_matching(&vec![vec![0.0; 3]; 3]).unwrap().cost, 0.0);
    }

    #[test]
    fn exact_rational_matching() {
        use crate::Rational;
        let r = |v: f64| <Rational as Scalar>::of(v);
        let c = vec![vec![r(0.1), r(0.2)], vec![r(0.3), r(0.1)]];
        assert_eq!(min_cost_matching(&c).unwrap().cost, r(0.2));
    }

    #[test]
    fn agrees_with_permutation_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let c: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..20) as f64).collect())
                .collect();
            let (mut sum, mut bot) = (f64::INFINITY, f64::INFINITY);
            for p in perms(n) {
                sum = sum.min((0..n).map(|i| c[i][p[i]]).sum());
                bot = bot.min((0..n).map(|i| c[i][p[i]]).fold(0.0, f64::max));
            }
            assert_eq!(min_cost_matching(&c).unwrap().cost, sum);
            assert_eq!(bottleneck_matching(&c).unwrap().cost, bot);
        }
    }
}
