use crate::error::{Error, Result};
use crate::model::{Facility, PreferenceProfile};
use crate::scalar::Scalar;
use crate::social_choice::{
    majority_graph, Certificate, DistancePartialOrder, EdgeReason, Justification, MajorityGraph, SocialChoiceOutcome,
};

/// Majority graph plus the edges added by the witness rule.
///
/// For a pair with only the edge `(y, w)`, the edge `(w, y)` is added when
/// some third facility `p` defeats or ties `y` in the original majority graph
/// and `d(y,w) <= d(y,p)` is known. The rule reads only the original graph and
/// the fixed partial order, so the result does not depend on pair order.
#[derive(Clone, Debug)]
pub struct AugmentedGraph {
    majority: MajorityGraph,
    added: Vec<Option<Facility>>,
}

impl AugmentedGraph {
    fn build(
        majority: MajorityGraph,
        order: &DistancePartialOrder,
        pairs: impl Iterator<Item = (Facility, Facility)>,
    ) -> Self {
        let m = majority.num_facilities();
        let mut added = vec![None; m * m];
        for (a, b) in pairs {
            let (w, y) = match (majority.has_edge(a, b), majority.has_edge(b, a)) {
                (true, false) => (b, a),
                (false, true) => (a, b),
                _ => continue,
            };
            let witness = majority
                .facilities()
                .filter(|&p| p != w && p != y)
                .find(|&p| majority.has_edge(p, y) && order.known_le(y, w, y, p));
            if let Some(p) = witness {
                added[w.0 * m + y.0] = Some(p);
            }
        }
        Self { majority, added }
    }

    pub fn majority(&self) -> &MajorityGraph {
        &self.majority
    }

    pub fn reason(&self, a: Facility, b: Facility) -> Option<EdgeReason> {
        if self.majority.has_edge(a, b) {
            Some(EdgeReason::Majority)
        } else {
            self.added[a.0 * self.majority.num_facilities() + b.0].map(|via| EdgeReason::Witness { via })
        }
    }

    pub fn has_edge(&self, a: Facility, b: Facility) -> bool {
        self.reason(a, b).is_some()
    }

    pub fn edges(&self) -> Vec<(Facility, Facility)> {
        let fs: Vec<Facility> = self.majority.facilities().collect();
        fs.iter()
            .flat_map(|&a| fs.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| self.has_edge(a, b))
            .collect()
    }

    /// Facilities with an edge to every other facility, in index order.
    pub fn dominating(&self) -> Vec<Facility> {
        self.majority
            .facilities()
            .filter(|&w| self.majority.facilities().all(|o| o == w || self.has_edge(w, o)))
            .collect()
    }
}

pub fn augmented_majority_graph(profile: &PreferenceProfile, order: &DistancePartialOrder) -> Result<AugmentedGraph> {
    let majority = majority_graph(profile)?;
    check_sizes(&majority, order)?;
    let m = majority.num_facilities();
    let pairs = (0..m).flat_map(|a| (a + 1..m).map(move |b| (Facility(a), Facility(b))));
    Ok(AugmentedGraph::build(majority, order, pairs))
}

fn check_sizes(majority: &MajorityGraph, order: &DistancePartialOrder) -> Result<()> {
    if majority.num_facilities() != order.num_facilities() {
        return Err(Error::Dimension(format!(
            "profile ranks {} facilities but the distance order covers {}",
            majority.num_facilities(),
            order.num_facilities()
        )));
    }
    Ok(())
}

/// Condorcet winner when one exists; otherwise the lowest-index facility with
/// an edge to every other facility in the augmented majority graph.
pub fn median_winner<T: Scalar>(
    profile: &PreferenceProfile,
    order: &DistancePartialOrder,
) -> Result<SocialChoiceOutcome<T>> {
    let majority = majority_graph(profile)?;
    check_sizes(&majority, order)?;
    if let Some(w) = majority.condorcet_winner() {
        let justifications = majority
            .facilities()
            .filter(|&o| o != w)
            .map(|over| Justification {
                over,
                reason: EdgeReason::Majority,
            })
            .collect();
        return Ok(SocialChoiceOutcome {
            winner: w,
            certificate: Certificate::Dominance {
                condorcet: true,
                justifications,
            },
        });
    }
    let graph = augmented_majority_graph(profile, order)?;
    let winner = *graph.dominating().first().ok_or(Error::NoDominatingFacility)?;
    let justifications = graph
        .majority()
        .facilities()
        .filter(|&o| o != winner)
        .map(|over| Justification {
            over,
            reason: graph.reason(winner, over).expect("dominating facility has every edge"),
        })
        .collect();
    Ok(SocialChoiceOutcome {
        winner,
        certificate: Certificate::Dominance {
            condorcet: false,
            justifications,
        },
    })
}
