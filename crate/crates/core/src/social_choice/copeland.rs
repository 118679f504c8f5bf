use crate::error::Result;
use crate::model::{Facility, PreferenceProfile};
use crate::scalar::Scalar;
use crate::social_choice::{majority_graph, Certificate, SocialChoiceOutcome};

/// Most pairwise defeats, half a point per tie, lowest index among equals.
pub fn copeland_winner<T: Scalar>(profile: &PreferenceProfile) -> Result<SocialChoiceOutcome<T>> {
    let g = majority_graph(profile)?;
    let scores: Vec<f64> = g
        .facilities()
        .map(|a| {
            g.facilities()
                .filter(|&b| b != a)
                .map(|b| {
                    if g.defeats(a, b) {
                        1.0
                    } else if g.ties(a, b) {
                        0.5
                    } else {
                        0.0
                    }
                })
                .sum()
        })
        .collect();
    let mut winner = 0;
    for (f, s) in scores.iter().enumerate() {
        if *s > scores[winner] {
            winner = f;
        }
    }
    Ok(SocialChoiceOutcome {
        winner: Facility(winner),
        certificate: Certificate::Copeland { scores },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unanimous_and_condorcet() {
        let p = PreferenceProfile::from_indices(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(copeland_winner::<f64>(&p).unwrap().winner, Facility(1));
        let p = PreferenceProfile::from_indices(3, &[vec![2, 0, 1], vec![0, 2, 1], vec![2, 1, 0]]).unwrap();
        assert_eq!(copeland_winner::<f64>(&p).unwrap().winner, Facility(2));
    }

    #[test]
    fn three_cycle_goes_to_lowest_index() {
        // A>B>C, B>C>A, C>A>B: every facility beats exactly one other
        let p = PreferenceProfile::from_indices(3, &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let out = copeland_winner::<f64>(&p).unwrap();
        assert_eq!(out.winner, Facility(0));
        assert_eq!(
            out.certificate,
            Certificate::Copeland {
                scores: vec![1.0, 1.0, 1.0]
            }
        );
    }

    #[test]
    fn ties_score_half() {
        let p = PreferenceProfile::from_indices(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            copeland_winner::<f64>(&p).unwrap().certificate,
            Certificate::Copeland { scores: vec![0.5, 0.5] }
        );
    }
}
