//! Solvers for profiles that are single-crossing along a line of voters.
//!
//! All entry points take voters in their original labels plus the line
//! order, normalize internally (voters along the line, first voter ranking
//! candidates `0 < 1 < ... < m-1`), and report assignments in the original
//! labels, canonicalized.

mod dp;
mod egal;
mod klink;
mod larsch;
mod prefix;

use std::time::Instant;

use num_rational::Rational64;

use crate::assignment::{canonicalize, Assignment, SolveResult, Stats};
use crate::cost::{with_aggregate, Aggregate, Cost, Objective};
use crate::error::{Error, Result};
use crate::instance::NormalizedLine;
use crate::profile::{with_rho, PreferenceProfile};
use crate::structure::LineOrder;
use crate::validation::check_sc_line;

pub use egal::solve_line_egal_threshold;
pub use klink::{smawk_min_links, solve_line_klink, KLinkInstance, LinkTie, PenalizedPath};
pub use prefix::{check_concave_monge, PrefixSums};

/// Debug builds re-check single-crossing on inputs up to this many
/// `n * m^2` operations before running a line solver.
const DEBUG_CHECK_LIMIT: usize = 1_000_000;

pub(crate) fn check_order(profile: &PreferenceProfile, order: &[usize]) -> Result<()> {
    if order.len() != profile.num_voters() {
        return Err(Error::InvalidStructure(format!(
            "line order lists {} voters but the profile has {}",
            order.len(),
            profile.num_voters()
        )));
    }
    LineOrder::new(order.to_vec()).map(|_| ())
}

pub(crate) fn debug_check_single_crossing(profile: &PreferenceProfile, order: &[usize]) {
    let (n, m) = (profile.num_voters(), profile.num_candidates());
    if cfg!(debug_assertions) && n.saturating_mul(m * m) <= DEBUG_CHECK_LIMIT {
        if let Err(v) = check_sc_line(profile, order) {
            panic!("line solver called on a profile that is not single-crossing: {v:?}");
        }
    }
}

fn finish(
    profile: &PreferenceProfile,
    norm: &NormalizedLine,
    rep: Vec<usize>,
    algorithm: &str,
    mut stats: Stats,
    start: Instant,
) -> SolveResult {
    let restored = norm.restore(&Assignment::new(rep));
    let assignment = canonicalize(profile, &restored);
    stats.insert("wall_time_us".into(), start.elapsed().as_micros() as u64);
    SolveResult::new(profile, assignment, algorithm, stats)
}

/// The O(nmk) dynamic program over `(voter, committee size, candidate)`.
/// The egalitarian objective replaces `+` by `max` in the recurrences.
pub fn solve_line_dp(
    profile: &PreferenceProfile,
    order: &[usize],
    k: usize,
    objective: Objective,
) -> Result<SolveResult> {
    let start = Instant::now();
    let (n, m) = (profile.num_voters(), profile.num_candidates());
    if k < 1 || k > m {
        return Err(Error::InvalidK { k, max: m });
    }
    check_order(profile, order)?;
    debug_check_single_crossing(profile, order);

    let norm = NormalizedLine::new(profile, order);
    let (rep, states) = with_rho!(&norm.rho, values => {
        with_aggregate!(objective, A => {
            let out = dp::line_dp::<_, A>(values, n, m, k);
            debug_assert!(
                out.rep
                    .iter()
                    .enumerate()
                    .fold(Cost::zero(), |acc, (i, &c)| A::combine(acc, values[i * m + c]))
                    == out.cost,
                "reconstructed assignment does not attain the optimum"
            );
            (out.rep, out.states)
        })
    });
    let stats = Stats::from([("states".to_string(), states)]);
    Ok(finish(profile, &norm, rep, "line-dp", stats, start))
}

/// Prefix sums over the voters in `order`, in the profile's own candidate
/// labels and exact arithmetic.
pub fn build_prefix_sums(profile: &PreferenceProfile, order: &[usize]) -> PrefixSums<Rational64> {
    let m = profile.num_candidates();
    let rho: Vec<Rational64> = (0..profile.num_voters() * m)
        .map(|idx| profile.rho().get(idx))
        .collect();
    PrefixSums::new(&rho, m, order)
}

/// Runs the concave Monge check on the segment weights of `order`, using
/// integer arithmetic when the matrix allows it.
pub fn check_line_monge(
    profile: &PreferenceProfile,
    order: &[usize],
) -> std::result::Result<(), (usize, usize)> {
    let m = profile.num_candidates();
    with_rho!(profile.rho(), values => {
        check_concave_monge(&PrefixSums::new(values, m, order))
    })
}
