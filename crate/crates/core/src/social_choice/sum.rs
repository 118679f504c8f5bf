use crate::error::Result;
use crate::model::{project_agents, Facility, FacilityDistances, PreferenceProfile, ProjectedAgents};
use crate::scalar::Scalar;
use crate::social_choice::{Certificate, SocialChoiceOutcome};

/// Facility minimising the total distance of the projected agents, lowest
/// index on ties. Only the agents' first choices and `l` are read.
pub fn sum_winner<T: Scalar>(tops: &ProjectedAgents<T>) -> SocialChoiceOutcome<T> {
    let costs: Vec<T> = tops
        .facility_distances()
        .facilities()
        .map(|f| tops.sum_cost(f))
        .collect();
    let mut winner = 0;
    for (f, c) in costs.iter().enumerate().skip(1) {
        if *c < costs[winner] {
            winner = f;
        }
    }
    SocialChoiceOutcome {
        winner: Facility(winner),
        certificate: Certificate::ProjectedSum { costs },
    }
}

pub fn sum_winner_for_profile<T: Scalar>(
    profile: &PreferenceProfile,
    l: &FacilityDistances<T>,
) -> Result<SocialChoiceOutcome<T>> {
    Ok(sum_winner(&project_agents(profile, l)?))
}
