//! Agents, facilities, metrics and preference profiles.

mod constraints;
mod facility;
mod metric;
mod profile;
mod projection;

pub use constraints::{
    agent_constraints, consistency_constraints, distant_metric, AgentInequality, ConsistencyConstraintSet,
    ConstraintKind,
};
pub use facility::{validate_facility_distances, DistanceViolation, Facility, FacilityDistances, FacilitySet};
pub use metric::{check_consistency, has_preference_ties, preferences_from_metric, FullMetric};
pub use profile::PreferenceProfile;
pub use projection::{project_agents, ProjectedAgents};
