use std::time::Instant;

use super::klink::{path_to_rep, smawk_min_links, KLinkInstance, LinkTie};
use super::prefix::PrefixSums;
use super::{check_order, debug_check_single_crossing, finish};
use crate::assignment::{SolveResult, Stats};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::NormalizedLine;
use crate::profile::{with_rho, PreferenceProfile};

/// A zero-cost path with at most `k` links under the 0/1 matrix
/// `rho(v, c) > t`, if one exists.
fn zero_cost_path<C: Cost>(values: &[C], m: usize, t: C, k: usize) -> Option<(KLinkInstance, Vec<usize>)> {
    let n = values.len() / m;
    let above: Vec<i64> = values.iter().map(|&x| i64::from(x > t)).collect();
    let identity: Vec<usize> = (0..n).collect();
    let klink = KLinkInstance::new(PrefixSums::new(&above, m, &identity));
    let best = smawk_min_links(&klink, 0, LinkTie::FewestLinks);
    (best.cost == 0 && best.links <= k).then_some((klink, best.path))
}

fn threshold_search<C: Cost>(values: &[C], m: usize, k: usize) -> (Vec<usize>, u64) {
    let mut thresholds = values.to_vec();
    thresholds.sort_unstable();
    thresholds.dedup();
    // The largest value is always feasible: one candidate for everybody.
    let (mut lo, mut hi) = (0, thresholds.len() - 1);
    let mut probes = 0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        probes += 1;
        if zero_cost_path(values, m, thresholds[mid], k).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    probes += 1;
    let (klink, path) =
        zero_cost_path(values, m, thresholds[lo], k).expect("the search ends on a feasible threshold");
    (path_to_rep(&klink, &path), probes)
}

/// Egalitarian optimum by binary search over the distinct misrepresentation
/// values: a threshold `t` is achievable iff the 0/1 matrix `rho > t`
/// admits a zero-cost committee of size at most `k`.
pub fn solve_line_egal_threshold(profile: &PreferenceProfile, order: &[usize], k: usize) -> Result<SolveResult> {
    let start = Instant::now();
    let m = profile.num_candidates();
    if k < 1 || k > m {
        return Err(Error::InvalidK { k, max: m });
    }
    check_order(profile, order)?;
    debug_check_single_crossing(profile, order);

    let norm = NormalizedLine::new(profile, order);
    let (rep, probes) = with_rho!(&norm.rho, values => threshold_search(values, m, k));
    let stats = Stats::from([("probes".to_string(), probes)]);
    Ok(finish(profile, &norm, rep, "line-egal-threshold", stats, start))
}
