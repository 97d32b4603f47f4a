//! Preference profiles and misrepresentation matrices.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// A per-(voter, candidate) misrepresentation matrix, stored row-major
/// (`v * m + c`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rho {
    Integer(Vec<i64>),
    Rational(Vec<Rational64>),
}

impl Rho {
    /// Builds a matrix from rationals, collapsing to integers when every entry
    /// is integral.
    pub fn from_ratios(values: Vec<Rational64>) -> Rho {
        if values.iter().all(|r| r.is_integer()) {
            Rho::Integer(values.iter().map(|r| r.to_integer()).collect())
        } else {
            Rho::Rational(values)
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Rho::Integer(v) => v.len(),
            Rho::Rational(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, Rho::Integer(_))
    }

    pub fn get(&self, idx: usize) -> Rational64 {
        match self {
            Rho::Integer(v) => Rational64::from_integer(v[idx]),
            Rho::Rational(v) => v[idx],
        }
    }

    fn gather(&self, indices: impl Iterator<Item = usize>) -> Rho {
        match self {
            Rho::Integer(v) => Rho::Integer(indices.map(|i| v[i]).collect()),
            Rho::Rational(v) => Rho::Rational(indices.map(|i| v[i]).collect()),
        }
    }
}

/// Runs a body generic over [`crate::cost::Cost`] on the matrix's values.
macro_rules! with_rho {
    ($rho:expr, $values:ident => $body:expr) => {
        match $rho {
            $crate::profile::Rho::Integer($values) => $body,
            $crate::profile::Rho::Rational($values) => $body,
        }
    };
}
pub(crate) use with_rho;

/// Rankings of `n` voters over candidates `0..m` (best first) together with a
/// misrepresentation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    n: usize,
    m: usize,
    rankings: Vec<usize>,
    positions: Vec<usize>,
    rho: Rho,
}

/// Borda misrepresentation: the number of candidates a voter ranks above `c`.
pub fn borda_rho(rankings: &[Vec<usize>]) -> Vec<i64> {
    let m = rankings.first().map_or(0, Vec::len);
    let mut rho = vec![0i64; rankings.len() * m];
    for (v, ranking) in rankings.iter().enumerate() {
        for (pos, &c) in ranking.iter().enumerate() {
            rho[v * m + c] = pos as i64;
        }
    }
    rho
}

impl PreferenceProfile {
    /// Validates that every ranking is a permutation of `0..m` and that `rho`
    /// has the right shape with non-negative entries. `None` selects Borda.
    ///
    /// Consistency of `rho` with the rankings is not enforced here; see
    /// [`crate::validation::check_consistency`].
    pub fn new(rankings: Vec<Vec<usize>>, rho: Option<Rho>) -> Result<Self> {
        let n = rankings.len();
        if n == 0 {
            return Err(Error::InvalidProfile("profile has no voters".into()));
        }
        let m = rankings[0].len();
        if m == 0 {
            return Err(Error::InvalidProfile("profile has no candidates".into()));
        }
        let mut positions = vec![usize::MAX; n * m];
        for (v, ranking) in rankings.iter().enumerate() {
            if ranking.len() != m {
                return Err(Error::InvalidProfile(format!(
                    "voter {} ranks {} candidates, expected {m}",
                    v + 1,
                    ranking.len()
                )));
            }
            for (pos, &c) in ranking.iter().enumerate() {
                if c >= m || positions[v * m + c] != usize::MAX {
                    return Err(Error::InvalidProfile(format!(
                        "ranking of voter {} is not a permutation of 1..{m}",
                        v + 1
                    )));
                }
                positions[v * m + c] = pos;
            }
        }
        let rho = match rho {
            Some(rho) => {
                if rho.len() != n * m {
                    return Err(Error::InvalidProfile(format!(
                        "rho has {} entries, expected {}",
                        rho.len(),
                        n * m
                    )));
                }
                let negative = match &rho {
                    Rho::Integer(v) => v.iter().position(|&x| x < 0),
                    Rho::Rational(v) => v.iter().position(|x| *x < Rational64::zero()),
                };
                if let Some(idx) = negative {
                    return Err(Error::InvalidProfile(format!(
                        "rho({}, {}) is negative",
                        idx / m + 1,
                        idx % m + 1
                    )));
                }
                rho
            }
            None => Rho::Integer(borda_rho(&rankings)),
        };
        Ok(Self {
            n,
            m,
            rankings: rankings.into_iter().flatten().collect(),
            positions,
            rho,
        })
    }

    /// Profile with Borda misrepresentation.
    pub fn borda(rankings: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(rankings, None)
    }

    pub fn num_voters(&self) -> usize {
        self.n
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn ranking(&self, v: usize) -> &[usize] {
        &self.rankings[v * self.m..(v + 1) * self.m]
    }

    pub fn rankings(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.ranking(v).to_vec()).collect()
    }

    /// Rank position of `c` in voter `v`'s order (0 = top).
    pub fn position(&self, v: usize, c: usize) -> usize {
        self.positions[v * self.m + c]
    }

    pub fn prefers(&self, v: usize, a: usize, b: usize) -> bool {
        self.position(v, a) < self.position(v, b)
    }

    pub fn top(&self, v: usize) -> usize {
        self.rankings[v * self.m]
    }

    pub fn rho(&self) -> &Rho {
        &self.rho
    }

    pub fn rho_at(&self, v: usize, c: usize) -> Rational64 {
        self.rho.get(v * self.m + c)
    }

    /// Whether `rho` is exactly the Borda matrix of the rankings.
    pub fn is_borda(&self) -> bool {
        match &self.rho {
            Rho::Integer(v) => (0..self.n * self.m).all(|i| v[i] == self.positions[i] as i64),
            Rho::Rational(_) => false,
        }
    }

    /// Reorders voters: voter `i` of the result is voter `order[i]` of `self`.
    pub fn permute_voters(&self, order: &[usize]) -> PreferenceProfile {
        self.permute_and_relabel(order, &CandidateRelabel::identity(self.m))
    }

    /// Renames candidate `c` to `relabel.to_new[c]`.
    pub fn relabel_candidates(&self, relabel: &CandidateRelabel) -> PreferenceProfile {
        let identity: Vec<usize> = (0..self.n).collect();
        self.permute_and_relabel(&identity, relabel)
    }

    /// [`Self::permute_voters`] followed by [`Self::relabel_candidates`] in
    /// one pass.
    pub fn permute_and_relabel(&self, order: &[usize], relabel: &CandidateRelabel) -> PreferenceProfile {
        let m = self.m;
        let mut rankings = Vec::with_capacity(order.len() * m);
        for &v in order {
            rankings.extend(self.ranking(v).iter().map(|&c| relabel.to_new[c]));
        }
        Self::from_flat(order.len(), m, rankings, self.permuted_rho(order, relabel))
    }

    /// The matrix of [`Self::permute_and_relabel`] without building the
    /// rankings.
    pub fn permuted_rho(&self, order: &[usize], relabel: &CandidateRelabel) -> Rho {
        let m = self.m;
        self.rho
            .gather(order.iter().flat_map(|&v| relabel.to_old.iter().map(move |&old| v * m + old)))
    }

    /// Builds from already-valid flat parts.
    fn from_flat(n: usize, m: usize, rankings: Vec<usize>, rho: Rho) -> PreferenceProfile {
        let mut positions = vec![0; n * m];
        for v in 0..n {
            for (pos, &c) in rankings[v * m..(v + 1) * m].iter().enumerate() {
                positions[v * m + c] = pos;
            }
        }
        Self {
            n,
            m,
            rankings,
            positions,
            rho,
        }
    }
}

/// A bijection between original and normalized candidate labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRelabel {
    pub to_new: Vec<usize>,
    pub to_old: Vec<usize>,
}

impl CandidateRelabel {
    pub fn identity(m: usize) -> Self {
        Self {
            to_new: (0..m).collect(),
            to_old: (0..m).collect(),
        }
    }

    /// The relabeling that turns `reference` into the identity ranking.
    pub fn from_reference(reference: &[usize]) -> Self {
        let mut to_new = vec![0; reference.len()];
        for (pos, &c) in reference.iter().enumerate() {
            to_new[c] = pos;
        }
        Self {
            to_new,
            to_old: reference.to_vec(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            to_new: self.to_old.clone(),
            to_old: self.to_new.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.to_new.iter().enumerate().all(|(i, &c)| i == c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borda_rows() {
        let rho = borda_rho(&[vec![0, 1, 2], vec![2, 0, 1]]);
        assert_eq!(&rho[0..3], &[0, 1, 2]);
        // ranking (3,1,2) in 1-based labels
        assert_eq!(&rho[3..6], &[1, 2, 0]);
    }

    #[test]
    fn identical_rankings_give_identical_rows() {
        let rankings = vec![vec![1, 0, 2]; 4];
        let rho = borda_rho(&rankings);
        for v in 0..4 {
            assert_eq!(&rho[v * 3..v * 3 + 3], &[1, 0, 2]);
        }
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(PreferenceProfile::borda(vec![vec![0, 0, 1]]).is_err());
        assert!(PreferenceProfile::borda(vec![vec![0, 1], vec![0, 1, 2]]).is_err());
        assert!(PreferenceProfile::borda(vec![]).is_err());
    }

    #[test]
    fn rejects_negative_rho() {
        let err = PreferenceProfile::new(vec![vec![0, 1]], Some(Rho::Integer(vec![0, -1])));
        assert!(matches!(err, Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn rationals_collapse_to_integers() {
        let rho = Rho::from_ratios(vec![Rational64::new(4, 2), Rational64::from_integer(0)]);
        assert_eq!(rho, Rho::Integer(vec![2, 0]));
        let rho = Rho::from_ratios(vec![Rational64::new(1, 2)]);
        assert!(!rho.is_integral());
    }

    #[test]
    fn relabel_makes_reference_identity() {
        // reference ranking (2,3,1) in 1-based labels
        let relabel = CandidateRelabel::from_reference(&[1, 2, 0]);
        assert_eq!(relabel.to_new, vec![2, 0, 1]);
        let p = PreferenceProfile::borda(vec![vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        let q = p.relabel_candidates(&relabel);
        assert_eq!(q.ranking(0), &[0, 1, 2]);
        assert_eq!(q.relabel_candidates(&relabel.inverse()), p);
        assert!(CandidateRelabel::from_reference(&[0, 1, 2]).is_identity());
    }
}
