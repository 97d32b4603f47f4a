//! A profile paired with the structure it is single-crossing on, plus the
//! normalization every solver runs before its dynamic program.

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::profile::{CandidateRelabel, PreferenceProfile, Rho};
use crate::structure::Structure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub profile: PreferenceProfile,
    pub structure: Structure,
}

impl Instance {
    pub fn new(profile: PreferenceProfile, structure: Structure) -> Result<Self> {
        if profile.num_voters() != structure.num_voters() {
            return Err(Error::InvalidStructure(format!(
                "{} structure has {} voters but the profile has {}",
                structure.kind(),
                structure.num_voters(),
                profile.num_voters()
            )));
        }
        Ok(Self { profile, structure })
    }
}

/// Relabels candidates so the structure's reference voter ranks them
/// `0, 1, ..., m-1`. Returns the relabeled profile and the map used.
pub fn normalize_to_root_order(
    profile: &PreferenceProfile,
    structure: &Structure,
) -> (PreferenceProfile, CandidateRelabel) {
    let relabel = CandidateRelabel::from_reference(profile.ranking(structure.reference_voter()));
    (profile.relabel_candidates(&relabel), relabel)
}

/// The misrepresentation matrix of a line instance with voters reordered
/// along the line and candidates relabeled so the first voter's ranking is
/// the identity.
#[derive(Debug, Clone)]
pub struct NormalizedLine {
    pub rho: Rho,
    pub relabel: CandidateRelabel,
    pub order: Vec<usize>,
}

impl NormalizedLine {
    pub fn new(profile: &PreferenceProfile, order: &[usize]) -> Self {
        let relabel = CandidateRelabel::from_reference(profile.ranking(order[0]));
        Self {
            rho: profile.permuted_rho(order, &relabel),
            relabel,
            order: order.to_vec(),
        }
    }

    /// Maps an assignment on the normalized instance back to the original
    /// voter and candidate labels.
    pub fn restore(&self, assignment: &Assignment) -> Assignment {
        assignment
            .relabel(&self.relabel.inverse())
            .unpermute_voters(&self.order)
    }
}
