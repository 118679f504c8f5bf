use distortion_core::assignment::{Assignment, AssignmentProblem, DistanceCost};
use distortion_core::audit::{
    audit_additive_assignment, audit_percentile_social_choice, audit_sum_social_choice, realized_assignment_distortion,
    realized_percentile_distortion, realized_sum_distortion, sampled_percentile_lower_bound, sampled_sum_lower_bound,
    AuditReport, Distortion,
};
use distortion_core::io::{load_instance, serialize_instance, Instance, ProblemSpec};
use distortion_core::model::{
    check_consistency, consistency_constraints, preferences_from_metric, Facility, FacilitySet,
};
use distortion_core::random::{random_instance, Geometry, ProfileKind, RandomInstance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, n: usize, m: usize, kind: ProfileKind) -> RandomInstance<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(&mut rng, n, m, Geometry::Euclidean, kind).unwrap()
}

fn assert_close(report: &AuditReport<f64>, realized: &Distortion<f64>) {
    match (&report.value, realized) {
        (Distortion::Finite(a), Distortion::Finite(b)) => {
            assert!((a - b).abs() <= 1e-6 * a.max(1.0), "audit {a} vs witness {b}")
        }
        (a, b) => assert_eq!(a, b),
    }
}

fn vector_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..9).prop_flat_map(|n| {
        (
            prop::collection::vec(0.0..100.0f64, n),
            prop::collection::vec(0.0..100.0f64, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn distance_costs_are_monotone_and_subadditive((s, t) in vector_pair()) {
        for cost in [DistanceCost::Sum, DistanceCost::Max] {
            let sum: Vec<f64> = s.iter().zip(&t).map(|(a, b)| a + b).collect();
            let (cs, ct, csum) = (cost.evaluate(&s), cost.evaluate(&t), cost.evaluate(&sum));
            prop_assert!(csum <= cs + ct + 1e-9);
            prop_assert!(cs <= csum + 1e-9);
            let larger: Vec<f64> = s.iter().zip(&t).map(|(a, b)| a.max(*b)).collect();
            prop_assert!(cs <= cost.evaluate(&larger) + 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn metrics_are_consistent_with_their_own_rankings(seed in any::<u64>(), n in 1usize..8, m in 1usize..6) {
        let inst = instance(seed, n, m, ProfileKind::Located);
        let d = inst.metric.unwrap();
        let p = preferences_from_metric(&d);
        prop_assert!(check_consistency(&p, &d));
        prop_assert!(consistency_constraints(&p, &inst.l).unwrap().is_satisfied_by(&d));
        prop_assert!(check_consistency(&p.to_top_only(), &d));
    }

    #[test]
    fn sum_witnesses_realise_the_audit(seed in any::<u64>(), n in 1usize..6, m in 2usize..5) {
        let inst = instance(seed, n, m, ProfileKind::Uniform);
        for w in (0..m).map(Facility) {
            let r = audit_sum_social_choice(w, &inst.profile, &inst.l).unwrap();
            prop_assert!(check_consistency(&inst.profile, &r.witness));
            assert_close(&r, &realized_sum_distortion(w, &r.witness));
            let sampled = sampled_sum_lower_bound(w, &inst.profile, &inst.l, 5, seed).unwrap();
            prop_assert!(sampled.value.cmp_value(&r.value).is_le() || sampled.value.to_f64() <= r.value.to_f64() + 1e-6);
        }
    }

    #[test]
    fn percentile_witnesses_realise_the_audit(seed in any::<u64>(), n in 1usize..7, m in 2usize..5) {
        let inst = instance(seed, n, m, ProfileKind::Uniform);
        for alpha in [0.5, 0.6, 1.0] {
            for w in (0..m).map(Facility) {
                let r = audit_percentile_social_choice(w, &inst.profile, &inst.l, alpha).unwrap();
                prop_assert!(check_consistency(&inst.profile, &r.witness));
                assert_close(&r, &realized_percentile_distortion(w, &r.witness, alpha).unwrap());
                let sampled = sampled_percentile_lower_bound(w, &inst.profile, &inst.l, alpha, 3, seed).unwrap();
                prop_assert!(sampled.value.to_f64() <= r.value.to_f64() + 1e-6);
            }
        }
    }

    #[test]
    fn matching_witnesses_realise_the_audit(seed in any::<u64>(), n in 1usize..4, extra in 0usize..2) {
        let m = n + extra;
        let inst = instance(seed, n, m, ProfileKind::Uniform);
        for problem in [AssignmentProblem::matching_min_cost(n, m).unwrap(), AssignmentProblem::matching_egalitarian(n, m).unwrap()] {
            let x = problem.valid_assignments(1000).unwrap().remove(0);
            let r = audit_additive_assignment(&x, &inst.profile, &inst.l, &problem).unwrap();
            prop_assert!(check_consistency(&inst.profile, &r.witness));
            assert_close(&r, &realized_assignment_distortion(&x, &r.witness, &problem).unwrap());
        }
    }

    #[test]
    fn instance_files_round_trip(seed in any::<u64>(), n in 1usize..8, m in 1usize..5, top_only in any::<bool>()) {
        let kind = if top_only { ProfileKind::TopOnly } else { ProfileKind::Located };
        let inst = instance(seed, n, m, kind);
        let parsed = Instance {
            facilities: FacilitySet::numbered(m),
            l: Some(inst.l.clone()),
            candidate_rankings: None,
            profile: inst.profile.clone(),
            problem: ProblemSpec::KMedian { k: 1 },
            metric: inst.metric.clone(),
            source: None,
        };
        let text = serialize_instance(&parsed.to_file());
        let back = load_instance(&text).unwrap();
        prop_assert_eq!(&back, &parsed);
        prop_assert_eq!(serialize_instance(&back.to_file()), text);
    }
}

#[test]
fn constant_assignments_reduce_to_social_choice() {
    let inst = instance(5, 4, 3, ProfileKind::Uniform);
    let problem = AssignmentProblem::social_choice_sum(4, 3).unwrap();
    for w in (0..3).map(Facility) {
        let a = audit_additive_assignment(&Assignment::constant(4, w), &inst.profile, &inst.l, &problem).unwrap();
        let b = audit_sum_social_choice(w, &inst.profile, &inst.l).unwrap();
        assert!((a.value.to_f64() - b.value.to_f64()).abs() <= 1e-9 || a.value == b.value);
    }
}
