//! Single-winner rules: the projected-sum rule, the augmented-majority rule
//! for median and percentile objectives, objective evaluators, and a Copeland
//! baseline.

mod copeland;
mod majority;
mod median;
mod objectives;
mod partial_order;
mod sum;

pub use copeland::copeland_winner;
pub use majority::{majority_graph, MajorityGraph};
pub use median::{augmented_majority_graph, median_winner, AugmentedGraph};
pub use objectives::{evaluate_percentile_cost, evaluate_sum_cost, order_statistic, percentile_rank};
pub use partial_order::{distance_partial_order, CandidateRankings, DistancePartialOrder, DistanceSource};
pub use sum::{sum_winner, sum_winner_for_profile};

use crate::model::Facility;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeReason {
    /// The pair's edge is in the majority graph.
    Majority,
    /// Added because `via` defeats or ties the loser and is known to be at
    /// least as far from the loser as the winner is.
    Witness { via: Facility },
}

/// Why the winner has an edge to `over`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Justification {
    pub over: Facility,
    pub reason: EdgeReason,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<T> {
    /// Sum of projected-agent distances per facility.
    ProjectedSum { costs: Vec<T> },
    /// One justification per losing facility.
    Dominance {
        condorcet: bool,
        justifications: Vec<Justification>,
    },
    /// Copeland scores: defeats plus half of the ties.
    Copeland { scores: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SocialChoiceOutcome<T> {
    pub winner: Facility,
    pub certificate: Certificate<T>,
}
