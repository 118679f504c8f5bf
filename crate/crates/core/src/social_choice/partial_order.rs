use crate::error::{Error, Result};
use crate::model::{Facility, FacilityDistances};
use crate::scalar::{approx_le, cmp_scalar, Scalar};

/// Each facility's ranking of the other facilities, nearest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRankings {
    m: usize,
    rankings: Vec<Vec<Facility>>,
}

impl CandidateRankings {
    pub fn new(m: usize, rankings: Vec<Vec<Facility>>) -> Result<Self> {
        if rankings.len() != m {
            return Err(Error::InconsistentCandidateRankings(format!(
                "{} rankings given for {m} facilities",
                rankings.len()
            )));
        }
        for (a, ranking) in rankings.iter().enumerate() {
            let mut seen = vec![false; m];
            seen[a] = true;
            if ranking.len() + 1 != m {
                return Err(Error::InconsistentCandidateRankings(format!(
                    "facility {} ranks {} others, expected {}",
                    Facility(a),
                    ranking.len(),
                    m - 1
                )));
            }
            for f in ranking {
                if f.0 >= m || seen[f.0] {
                    return Err(Error::InconsistentCandidateRankings(format!(
                        "facility {}'s ranking is not a total order of the other facilities",
                        Facility(a)
                    )));
                }
                seen[f.0] = true;
            }
        }
        Ok(Self { m, rankings })
    }

    /// Rankings induced by numeric distances, ties going to the lower index.
    pub fn from_distances<T: Scalar>(l: &FacilityDistances<T>) -> Self {
        let rankings = l
            .facilities()
            .map(|a| {
                let mut others: Vec<Facility> = l.facilities().filter(|b| *b != a).collect();
                others.sort_by(|x, y| cmp_scalar(l.get(a, *x), l.get(a, *y)).then(x.0.cmp(&y.0)));
                others
            })
            .collect();
        Self { m: l.len(), rankings }
    }

    pub fn num_facilities(&self) -> usize {
        self.m
    }

    pub fn ranking(&self, facility: Facility) -> &[Facility] {
        &self.rankings[facility.0]
    }

    pub fn rankings(&self) -> &[Vec<Facility>] {
        &self.rankings
    }
}

pub enum DistanceSource<'a, T> {
    Numeric(&'a FacilityDistances<T>),
    Ordinal(&'a CandidateRankings),
}

/// What is known about how distances between facility pairs compare.
///
/// Elements are unordered facility pairs. The relation is reflexive and
/// transitively closed, so any cycle of `<=` facts puts its pairs into one
/// equality class with the relation holding both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistancePartialOrder {
    m: usize,
    pairs: Vec<(Facility, Facility)>,
    /// `le[p * pairs.len() + q]`: distance of pair `p` is known `<=` that of pair `q`
    le: Vec<bool>,
}

pub fn distance_partial_order<T: Scalar>(source: DistanceSource<'_, T>) -> Result<DistancePartialOrder> {
    match source {
        DistanceSource::Numeric(l) => Ok(DistancePartialOrder::from_distances(l)),
        DistanceSource::Ordinal(r) => DistancePartialOrder::from_rankings(r),
    }
}

fn pair_list(m: usize) -> Vec<(Facility, Facility)> {
    (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (Facility(a), Facility(b))))
        .collect()
}

impl DistancePartialOrder {
    pub fn from_distances<T: Scalar>(l: &FacilityDistances<T>) -> Self {
        let pairs = pair_list(l.len());
        let p = pairs.len();
        let mut le = vec![false; p * p];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate() {
                le[i * p + j] = approx_le(l.get(a, b), l.get(c, d));
            }
        }
        let mut order = Self { m: l.len(), pairs, le };
        order.close();
        order
    }

    pub fn from_rankings(rankings: &CandidateRankings) -> Result<Self> {
        // re-run the shape checks in case the value was built by hand
        let rankings = CandidateRankings::new(rankings.m, rankings.rankings.clone())?;
        let pairs = pair_list(rankings.m);
        let p = pairs.len();
        let mut order = Self {
            m: rankings.m,
            pairs,
            le: vec![false; p * p],
        };
        for i in 0..p {
            order.le[i * p + i] = true;
        }
        for a in (0..rankings.m).map(Facility) {
            for w in rankings.ranking(a).windows(2) {
                let near = order.pair_index(a, w[0]);
                let far = order.pair_index(a, w[1]);
                order.le[near * p + far] = true;
            }
        }
        order.close();
        Ok(order)
    }

    /// Warshall's transitive closure. Mutually reachable pairs form the
    /// strongly connected components, i.e. the equality classes.
    fn close(&mut self) {
        let p = self.pairs.len();
        for k in 0..p {
            for i in 0..p {
                if !self.le[i * p + k] {
                    continue;
                }
                for j in 0..p {
                    if self.le[k * p + j] {
                        self.le[i * p + j] = true;
                    }
                }
            }
        }
    }

    pub fn num_facilities(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[(Facility, Facility)] {
        &self.pairs
    }

    fn pair_index(&self, a: Facility, b: Facility) -> usize {
        let (lo, hi) = if a.0 < b.0 { (a.0, b.0) } else { (b.0, a.0) };
        assert!(lo != hi, "no distance pair for a facility and itself");
        // pairs are listed row by row over the strict upper triangle
        lo * self.m - lo * (lo + 1) / 2 + (hi - lo - 1)
    }

    /// Whether `d(a,b) <= d(c,d)` is known.
    pub fn known_le(&self, a: Facility, b: Facility, c: Facility, d: Facility) -> bool {
        let p = self.pairs.len();
        self.le[self.pair_index(a, b) * p + self.pair_index(c, d)]
    }

    /// Whether `d(a,b) = d(c,d)` is known.
    pub fn known_equal(&self, a: Facility, b: Facility, c: Facility, d: Facility) -> bool {
        self.known_le(a, b, c, d) && self.known_le(c, d, a, b)
    }

    pub fn equality_classes(&self) -> Vec<Vec<(Facility, Facility)>> {
        let p = self.pairs.len();
        let mut assigned = vec![false; p];
        let mut classes = Vec::new();
        for i in 0..p {
            if assigned[i] {
                continue;
            }
            let class: Vec<usize> = (i..p)
                .filter(|&j| !assigned[j] && self.le[i * p + j] && self.le[j * p + i])
                .collect();
            for &j in &class {
                assigned[j] = true;
            }
            classes.push(class.into_iter().map(|j| self.pairs[j]).collect());
        }
        classes
    }
}
