use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances, PreferenceProfile};
use crate::scalar::Scalar;

/// Copies of the agents relocated onto their first-choice facilities.
///
/// Once moved, every projected agent's distance to a facility is read off the
/// facility metric, so problems over projected agents are fully known.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedAgents<T> {
    tops: Vec<Facility>,
    facilities: FacilityDistances<T>,
}

impl<T: Scalar> ProjectedAgents<T> {
    pub fn num_agents(&self) -> usize {
        self.tops.len()
    }

    pub fn top(&self, agent: usize) -> Facility {
        self.tops[agent]
    }

    pub fn tops(&self) -> &[Facility] {
        &self.tops
    }

    pub fn facility_distances(&self) -> &FacilityDistances<T> {
        &self.facilities
    }

    pub fn distance(&self, agent: usize, facility: Facility) -> &T {
        self.facilities.get(self.tops[agent], facility)
    }

    /// Distances between projected agents (the distance between their sites).
    pub fn agent_distance(&self, a: usize, b: usize) -> &T {
        self.facilities.get(self.tops[a], self.tops[b])
    }

    /// `n x m` matrix of projected agent-to-facility distances.
    pub fn cost_matrix(&self) -> Vec<Vec<T>> {
        (0..self.num_agents())
            .map(|i| {
                self.facilities
                    .facilities()
                    .map(|f| self.distance(i, f).clone())
                    .collect()
            })
            .collect()
    }

    /// Sum over projected agents of their distance to `facility`.
    pub fn sum_cost(&self, facility: Facility) -> T {
        (0..self.num_agents()).fold(T::zero(), |acc, i| acc + self.distance(i, facility).clone())
    }
}

pub fn project_agents<T: Scalar>(
    profile: &PreferenceProfile,
    facilities: &FacilityDistances<T>,
) -> Result<ProjectedAgents<T>> {
    if profile.num_facilities() != facilities.len() {
        return Err(Error::Dimension(format!(
            "profile ranks {} facilities but the distance matrix has {}",
            profile.num_facilities(),
            facilities.len()
        )));
    }
    let tops = (0..profile.num_agents())
        .map(|i| {
            profile
                .ranking(i)
                .first()
                .copied()
                .ok_or_else(|| Error::InvalidProfile(format!("agent {i} has an empty ranking")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjectedAgents {
        tops,
        facilities: facilities.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unanimous_tops_project_onto_one_site() {
        let l = FacilityDistances::from_upper(2, &[3.0]).unwrap();
        let p = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        let proj = project_agents(&p, &l).unwrap();
        assert!(proj.tops().iter().all(|f| *f == Facility(0)));
        assert_eq!(proj.sum_cost(Facility(0)), 0.0);
    }

    #[test]
    fn projected_distances_read_off_facility_metric() {
        let l = FacilityDistances::from_upper(2, &[4.0]).unwrap();
        let p = PreferenceProfile::top_only(2, vec![Facility(0), Facility(0), Facility(1)]).unwrap();
        let proj = project_agents(&p, &l).unwrap();
        let to_f2: Vec<f64> = (0..3).map(|i| *proj.distance(i, Facility(1))).collect();
        assert_eq!(to_f2, vec![4.0, 4.0, 0.0]);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let l = FacilityDistances::from_upper(2, &[4.0]).unwrap();
        let p = PreferenceProfile::from_indices(3, &[vec![0, 1, 2]]).unwrap();
        assert!(project_agents(&p, &l).is_err());
    }
}
