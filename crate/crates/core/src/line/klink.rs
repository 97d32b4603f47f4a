//! Exactly-k-link shortest paths on the segment DAG via a Lagrangian penalty.
//!
//! Vertices are `0..=n`; arc `i -> j` (`i < j`) covers voters `i..j` with
//! weight `omega(i, j)`. A path with `l` arcs is a committee of at most `l`
//! candidates. The weights are concave Monge, so `g(l)`, the lightest path
//! with exactly `l` arcs, is convex in `l` and the unconstrained problem
//! with a per-arc penalty can be solved by online row minima.

use std::time::Instant;

use super::larsch::OnlineMinima;
use super::prefix::PrefixSums;
use super::{check_order, debug_check_single_crossing, finish};
use crate::assignment::Stats;
use crate::assignment::SolveResult;
use crate::error::{Error, Result};
use crate::instance::NormalizedLine;
use crate::profile::{PreferenceProfile, Rho};

/// The segment DAG of an integer line instance.
#[derive(Debug, Clone)]
pub struct KLinkInstance {
    prefix: PrefixSums<i64>,
}

impl KLinkInstance {
    pub fn new(prefix: PrefixSums<i64>) -> Self {
        Self { prefix }
    }

    /// Number of voters; the DAG has vertices `0..=n`.
    pub fn n(&self) -> usize {
        self.prefix.num_voters()
    }

    pub fn weight(&self, i: usize, j: usize) -> Result<i64> {
        self.prefix.omega(i, j).map(|(w, _)| w)
    }

    pub fn cand(&self, i: usize, j: usize) -> Result<usize> {
        self.prefix.omega(i, j).map(|(_, c)| c)
    }

    pub fn prefix(&self) -> &PrefixSums<i64> {
        &self.prefix
    }
}

/// Which optimal path to return when several minimize the penalized cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkTie {
    FewestLinks,
    MostLinks,
}

/// An optimal path for the penalized objective `weight + lambda * links`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenalizedPath {
    /// Penalized cost.
    pub cost: i128,
    pub links: usize,
    /// Visited vertices, `0` first and `n` last.
    pub path: Vec<usize>,
}

impl PenalizedPath {
    /// Path weight without the penalty.
    pub fn weight(&self, lambda: i64) -> i128 {
        self.cost - i128::from(lambda) * self.links as i128
    }
}

/// Minimum over all `0 -> n` paths of `weight + lambda * links`.
///
/// Each arc value is scaled to `(n + 1) * (omega + lambda) +/- 1`; since a
/// path has at most `n` arcs the `+/- 1` only breaks ties, toward the fewest
/// or the most links.
pub fn smawk_min_links(klink: &KLinkInstance, lambda: i64, tie: LinkTie) -> PenalizedPath {
    let n = klink.n();
    let scale = n as i128 + 1;
    let bump: i128 = match tie {
        LinkTie::FewestLinks => 1,
        LinkTie::MostLinks => -1,
    };
    let lambda = i128::from(lambda);
    let prefix = &klink.prefix;
    let arc = |i: usize, j: usize| scale * (i128::from(prefix.omega_unchecked(i, j).0) + lambda) + bump;

    let mut dist = vec![0i128; n + 1];
    let mut pred = vec![0usize; n + 1];
    let mut minima = OnlineMinima::new(n);
    for r in 0..n {
        let col = {
            let dist = &dist;
            minima.next_argmin(&|row: usize, c: usize| {
                if c > row {
                    i128::MAX / 4
                } else {
                    dist[c] + arc(c, row + 1)
                }
            })
        };
        dist[r + 1] = dist[col] + arc(col, r + 1);
        pred[r + 1] = col;
    }

    let mut path = vec![n];
    let mut v = n;
    while v > 0 {
        v = pred[v];
        path.push(v);
    }
    path.reverse();
    let links = path.len() - 1;
    // scaled = scale * cost + bump * links
    let cost = (dist[n] - bump * links as i128) / scale;
    PenalizedPath { cost, links, path }
}

/// Given two optimal paths for the same penalty with `p` having fewer than
/// `k` links and `q` more, builds an optimal path with exactly `k` links by
/// following `p` and then jumping onto `q`.
fn splice(p: &[usize], q: &[usize], k: usize) -> Vec<usize> {
    let b = q.len() - 1;
    let mut i = 0;
    let mut best = None;
    for (j, &qj) in q[..b].iter().enumerate() {
        while i + 1 < p.len() && p[i + 1] <= qj {
            i += 1;
        }
        if i + b - j >= k {
            best = Some((i, j));
        }
    }
    let (i, j) = best.expect("the first splice point keeps all of q's links");
    let mut path = p[..=i].to_vec();
    path.extend_from_slice(&q[j + 1..]);
    debug_assert_eq!(path.len() - 1, k);
    path
}

/// The lightest path with at most `k` links, found by searching the
/// smallest integer penalty whose fewest-links optimum uses at most `k` arcs.
/// Returns the path and the number of penalized passes made.
pub(crate) fn best_path_within(klink: &KLinkInstance, k: usize) -> (Vec<usize>, u64) {
    let n = klink.n();
    let k = k.min(n);
    let free = smawk_min_links(klink, 0, LinkTie::FewestLinks);
    if free.links <= k {
        return (free.path, 1);
    }
    let mut passes = 1;
    let total = klink.prefix.omega_unchecked(0, n).0;
    // At lambda = total + 1 the single arc 0 -> n is strictly best.
    let (mut lo, mut hi) = (0i64, total + 1);
    let mut at_hi = None;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let cand = smawk_min_links(klink, mid, LinkTie::FewestLinks);
        passes += 1;
        if cand.links <= k {
            hi = mid;
            at_hi = Some(cand);
        } else {
            lo = mid;
        }
    }
    let fewest = match at_hi {
        Some(p) => p,
        None => {
            passes += 1;
            smawk_min_links(klink, hi, LinkTie::FewestLinks)
        }
    };
    if fewest.links == k {
        return (fewest.path, passes);
    }
    let most = smawk_min_links(klink, hi, LinkTie::MostLinks);
    passes += 1;
    debug_assert_eq!(most.cost, fewest.cost);
    if most.links == k {
        return (most.path, passes);
    }
    (splice(&fewest.path, &most.path, k), passes)
}

/// Committee of size at most `k` minimizing total misrepresentation, via
/// the penalized k-link path. Requires an integral misrepresentation matrix.
/// `k` may exceed the number of candidates.
pub fn solve_line_klink(profile: &PreferenceProfile, order: &[usize], k: usize) -> Result<SolveResult> {
    let start = Instant::now();
    if k < 1 {
        return Err(Error::InvalidK {
            k,
            max: profile.num_candidates(),
        });
    }
    if !profile.rho().is_integral() {
        return Err(Error::NonIntegerRho);
    }
    check_order(profile, order)?;
    debug_check_single_crossing(profile, order);

    let norm = NormalizedLine::new(profile, order);
    let Rho::Integer(values) = &norm.rho else {
        unreachable!("integrality was checked above")
    };
    let n = profile.num_voters();
    let identity: Vec<usize> = (0..n).collect();
    let klink = KLinkInstance::new(PrefixSums::new(values, profile.num_candidates(), &identity));
    let (path, passes) = best_path_within(&klink, k);
    let rep = path_to_rep(&klink, &path);
    let stats = Stats::from([
        ("passes".to_string(), passes),
        ("links".to_string(), (path.len() - 1) as u64),
    ]);
    Ok(finish(profile, &norm, rep, "line-klink", stats, start))
}

pub(crate) fn path_to_rep(klink: &KLinkInstance, path: &[usize]) -> Vec<usize> {
    let mut rep = vec![0; klink.n()];
    for w in path.windows(2) {
        let c = klink.prefix.omega_unchecked(w[0], w[1]).1;
        rep[w[0]..w[1]].fill(c);
    }
    rep
}
