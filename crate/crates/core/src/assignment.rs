//! Assignments of voters to representatives and the results solvers return.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;

use crate::cost::Objective;
use crate::profile::{CandidateRelabel, PreferenceProfile};

/// A voter -> candidate map and its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    rep: Vec<usize>,
    committee: Vec<usize>,
}

impl Assignment {
    pub fn new(rep: Vec<usize>) -> Self {
        let mut committee = rep.clone();
        committee.sort_unstable();
        committee.dedup();
        Self { rep, committee }
    }

    pub fn rep(&self) -> &[usize] {
        &self.rep
    }

    pub fn representative(&self, v: usize) -> usize {
        self.rep[v]
    }

    /// Distinct assigned candidates, ascending.
    pub fn committee(&self) -> &[usize] {
        &self.committee
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn relabel(&self, relabel: &CandidateRelabel) -> Assignment {
        Assignment::new(self.rep.iter().map(|&c| relabel.to_new[c]).collect())
    }

    /// Assignment on the original voter indices when `self` is indexed by
    /// position in `order`.
    pub fn unpermute_voters(&self, order: &[usize]) -> Assignment {
        let mut rep = vec![0; self.rep.len()];
        for (pos, &v) in order.iter().enumerate() {
            rep[v] = self.rep[pos];
        }
        Assignment::new(rep)
    }
}

/// Total (utilitarian) or maximum (egalitarian) misrepresentation.
pub fn cost(profile: &PreferenceProfile, assignment: &Assignment, objective: Objective) -> Rational64 {
    let values = assignment
        .rep()
        .iter()
        .enumerate()
        .map(|(v, &c)| profile.rho_at(v, c));
    match objective {
        Objective::Utilitarian => values.fold(Rational64::zero(), |a, b| a + b),
        Objective::Egalitarian => values.fold(Rational64::zero(), Rational64::max),
    }
}

/// Maps every voter to their most preferred member of the committee.
pub fn canonicalize(profile: &PreferenceProfile, assignment: &Assignment) -> Assignment {
    let committee = assignment.committee();
    let rep = (0..assignment.len())
        .map(|v| {
            *committee
                .iter()
                .min_by_key(|&&c| profile.position(v, c))
                .expect("assignment has a non-empty committee")
        })
        .collect();
    Assignment::new(rep)
}

/// Named counters collected while solving.
pub type Stats = BTreeMap<String, u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub assignment: Assignment,
    pub total_cost: Rational64,
    pub egal_cost: Rational64,
    pub k_used: usize,
    pub algorithm: String,
    pub stats: Stats,
}

impl SolveResult {
    pub fn new(
        profile: &PreferenceProfile,
        assignment: Assignment,
        algorithm: impl Into<String>,
        stats: Stats,
    ) -> Self {
        Self {
            total_cost: cost(profile, &assignment, Objective::Utilitarian),
            egal_cost: cost(profile, &assignment, Objective::Egalitarian),
            k_used: assignment.committee().len(),
            assignment,
            algorithm: algorithm.into(),
            stats,
        }
    }

    pub fn committee(&self) -> &[usize] {
        self.assignment.committee()
    }

    pub fn cost(&self, objective: Objective) -> Rational64 {
        match objective {
            Objective::Utilitarian => self.total_cost,
            Objective::Egalitarian => self.egal_cost,
        }
    }

    /// Adds unused candidates (lowest labels first) until the committee has
    /// `k` members. Assignment and costs are unchanged.
    pub fn padded_committee(&self, k: usize, m: usize) -> Vec<usize> {
        let mut committee = self.committee().to_vec();
        for c in 0..m {
            if committee.len() >= k {
                break;
            }
            if !committee.contains(&c) {
                committee.push(c);
            }
        }
        committee.sort_unstable();
        committee
    }
}
