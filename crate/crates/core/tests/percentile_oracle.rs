//! The percentile audit against literal enumeration of the agent sets that
//! realise both order statistics.
//!
//! `pc_k(W) >= t` iff some `n - k + 1` agents are at least `t` from `W`, and
//! `pc_k(X) <= s` iff some `k` agents are within `s` of `X`. Fixing both sets
//! leaves one linear-fractional program over the full pairwise consistency
//! system, written out here without the library's constraint builder.

use distortion_core::audit::{audit_percentile_social_choice, Distortion};
use distortion_core::lp::{LinearProgram, LpOutcome, Relation};
use distortion_core::model::{Facility, FacilityDistances, PreferenceProfile};
use distortion_core::random::{random_instance, Geometry, ProfileKind};
use distortion_core::social_choice::percentile_rank;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// `sup pc(W) / pc(X)` for fixed sets, or `None` when infinite.
fn pair_value(
    profile: &PreferenceProfile,
    l: &FacilityDistances<f64>,
    w: usize,
    x: usize,
    far_from_w: &[usize],
    near_x: &[usize],
) -> Option<f64> {
    let n = profile.num_agents();
    let m = l.len();
    let var = |i: usize, f: usize| i * m + f;
    let t = n * m;
    let tau = n * m + 1;
    let mut lp = LinearProgram::new(n * m + 2);
    lp.set_objective(t, 1.0);
    for i in 0..n {
        let ranking = profile.ranking(i);
        for a in 0..m {
            for b in a + 1..m {
                let lab = *l.get(Facility(a), Facility(b));
                lp.add_constraint(
                    vec![(var(i, a), 1.0), (var(i, b), -1.0), (tau, -lab)],
                    Relation::Le,
                    0.0,
                );
                lp.add_constraint(
                    vec![(var(i, b), 1.0), (var(i, a), -1.0), (tau, -lab)],
                    Relation::Le,
                    0.0,
                );
                lp.add_constraint(vec![(var(i, a), 1.0), (var(i, b), 1.0), (tau, -lab)], Relation::Ge, 0.0);
            }
        }
        let ranked: Vec<usize> = ranking.iter().map(|f| f.0).collect();
        for (pos, &better) in ranked.iter().enumerate() {
            let worse: Vec<usize> = if profile.is_top_only() {
                if pos > 0 {
                    break;
                }
                (0..m).filter(|&f| f != better).collect()
            } else {
                ranked[pos + 1..].to_vec()
            };
            for f in worse {
                lp.add_constraint(vec![(var(i, better), 1.0), (var(i, f), -1.0)], Relation::Le, 0.0);
            }
        }
    }
    for &a in far_from_w {
        lp.add_constraint(vec![(var(a, w), 1.0), (t, -1.0)], Relation::Ge, 0.0);
    }
    for &b in near_x {
        lp.add_constraint(vec![(var(b, x), 1.0)], Relation::Le, 1.0);
    }
    match lp.solve().unwrap() {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible => panic!("the zero point is always feasible"),
    }
}

fn oracle(profile: &PreferenceProfile, l: &FacilityDistances<f64>, w: usize, alpha: f64) -> f64 {
    let n = profile.num_agents();
    let k = percentile_rank(n, alpha).unwrap();
    let mut best = 1.0f64;
    for x in (0..l.len()).filter(|&x| x != w) {
        for far in subsets(n, n - k + 1) {
            for near in subsets(n, k) {
                match pair_value(profile, l, w, x, &far, &near) {
                    None => return f64::INFINITY,
                    Some(v) => best = best.max(v),
                }
            }
        }
    }
    best
}

fn compare(seed: u64, n: usize, m: usize, kind: ProfileKind, geometry: Geometry) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = random_instance::<f64, _>(&mut rng, n, m, geometry, kind).unwrap();
    for alpha in [0.5, 0.75, 1.0] {
        for w in 0..m {
            let expected = oracle(&inst.profile, &inst.l, w, alpha);
            let got = audit_percentile_social_choice(Facility(w), &inst.profile, &inst.l, alpha).unwrap();
            assert!(got.exact);
            match got.value {
                Distortion::Unbounded => assert!(expected.is_infinite(), "seed {seed}: inf vs {expected}"),
                Distortion::Finite(v) => assert!(
                    (v - expected).abs() <= 1e-6 * expected.max(1.0),
                    "seed {seed} alpha {alpha} w {w}: audit {v} vs enumeration {expected}"
                ),
            }
        }
    }
}

#[test]
fn decomposition_matches_enumeration_on_random_profiles() {
    for seed in 0..12 {
        compare(
            seed,
            2 + (seed as usize % 4),
            3,
            ProfileKind::Uniform,
            Geometry::Euclidean,
        );
    }
}

#[test]
fn decomposition_matches_enumeration_on_located_profiles() {
    for seed in 100..110 {
        compare(
            seed,
            3 + (seed as usize % 3),
            3,
            ProfileKind::Located,
            Geometry::Grid { side: 3 },
        );
    }
}

#[test]
fn decomposition_matches_enumeration_on_top_only_profiles() {
    for seed in 200..206 {
        compare(seed, 4, 3, ProfileKind::TopOnly, Geometry::Euclidean);
    }
}
