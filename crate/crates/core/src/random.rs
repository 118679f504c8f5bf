//! Seeded random instances for experiments and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::model::{Facility, FacilityDistances, FullMetric, PreferenceProfile};
use crate::scalar::Scalar;

/// How agent and facility locations are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    /// Uniform points in `[0, 10]^2`, Euclidean distances.
    Euclidean,
    /// Integer points in `{0..=side}^2`, Manhattan distances. Exact in every
    /// scalar type and full of ties.
    Grid { side: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    /// Rankings read off the drawn metric, ties broken by facility index.
    Located,
    /// Independent uniform permutations. Every profile is consistent with
    /// every facility distance matrix, so these are valid too.
    Uniform,
    /// Only each agent's first choice from the drawn metric.
    TopOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomInstance<T> {
    pub l: FacilityDistances<T>,
    pub profile: PreferenceProfile,
    /// The drawn metric, when the rankings were read off it.
    pub metric: Option<FullMetric<T>>,
}

fn draw_point<R: Rng + ?Sized>(rng: &mut R, geometry: Geometry) -> (f64, f64) {
    match geometry {
        Geometry::Euclidean => (rng.gen_range(0.0..=10.0), rng.gen_range(0.0..=10.0)),
        Geometry::Grid { side } => (rng.gen_range(0..=side) as f64, rng.gen_range(0..=side) as f64),
    }
}

fn between<T: Scalar>(a: (f64, f64), b: (f64, f64), geometry: Geometry) -> T {
    match geometry {
        Geometry::Euclidean => T::of(((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()),
        Geometry::Grid { .. } => T::of((a.0 - b.0).abs() + (a.1 - b.1).abs()),
    }
}

fn matrix<T: Scalar>(from: &[(f64, f64)], to: &[(f64, f64)], geometry: Geometry) -> Vec<Vec<T>> {
    from.iter()
        .map(|a| to.iter().map(|b| between(*a, *b, geometry)).collect())
        .collect()
}

pub fn random_facility_distances<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    geometry: Geometry,
) -> Result<FacilityDistances<T>> {
    let sites: Vec<_> = (0..m).map(|_| draw_point(rng, geometry)).collect();
    FacilityDistances::from_rows(matrix(&sites, &sites, geometry))
}

pub fn random_permutation_profile<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<PreferenceProfile> {
    let rankings = (0..n)
        .map(|_| {
            let mut r: Vec<Facility> = (0..m).map(Facility).collect();
            r.shuffle(rng);
            r
        })
        .collect();
    PreferenceProfile::new(m, rankings)
}

pub fn random_instance<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    geometry: Geometry,
    kind: ProfileKind,
) -> Result<RandomInstance<T>> {
    let sites: Vec<_> = (0..m).map(|_| draw_point(rng, geometry)).collect();
    let l = FacilityDistances::from_rows(matrix(&sites, &sites, geometry))?;
    if kind == ProfileKind::Uniform {
        return Ok(RandomInstance {
            profile: random_permutation_profile(rng, n, m)?,
            l,
            metric: None,
        });
    }
    let agents: Vec<_> = (0..n).map(|_| draw_point(rng, geometry)).collect();
    let metric = FullMetric::new(matrix(&agents, &sites, geometry), l.clone())?;
    let profile = crate::model::preferences_from_metric(&metric);
    let profile = if kind == ProfileKind::TopOnly {
        profile.to_top_only()
    } else {
        profile
    };
    Ok(RandomInstance {
        l,
        profile,
        metric: Some(metric),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::check_consistency;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn located_profiles_match_their_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for geometry in [Geometry::Euclidean, Geometry::Grid { side: 4 }] {
            for _ in 0..50 {
                let inst = random_instance::<f64, _>(&mut rng, 6, 4, geometry, ProfileKind::Located).unwrap();
                assert!(check_consistency(&inst.profile, inst.metric.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn grid_instances_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let inst =
            random_instance::<Rational, _>(&mut rng, 5, 3, Geometry::Grid { side: 5 }, ProfileKind::TopOnly).unwrap();
        assert!(inst.profile.is_top_only());
        assert!(check_consistency(&inst.profile, inst.metric.as_ref().unwrap()));
    }

    #[test]
    fn seeded_generation_repeats() {
        let a = random_instance::<f64, _>(
            &mut ChaCha8Rng::seed_from_u64(7),
            4,
            3,
            Geometry::Euclidean,
            ProfileKind::Uniform,
        );
        let b = random_instance::<f64, _>(
            &mut ChaCha8Rng::seed_from_u64(7),
            4,
            3,
            Geometry::Euclidean,
            ProfileKind::Uniform,
        );
        assert_eq!(a.unwrap(), b.unwrap());
    }
}
