//! Seeded generators of single-crossing instances.
//!
//! Every generator draws from one `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)`, so an instance is determined by its seed and
//! parameters. Misrepresentation defaults to Borda.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::profile::{PreferenceProfile, Rho};
use crate::structure::{GridShape, LineOrder, RootedTree};
use crate::validation::check_sc_grid;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random maximal sequence of adjacent transpositions turning
/// the identity into its reverse: at each step one of the current ascents
/// is swapped. Entries are positions `p` (swap `p` and `p + 1`).
pub fn random_reduced_word<R: Rng>(rng: &mut R, m: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut word = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    let mut ascents: Vec<usize> = (0..m.saturating_sub(1)).collect();
    while !ascents.is_empty() {
        let p = ascents[rng.gen_range(0..ascents.len())];
        perm.swap(p, p + 1);
        word.push(p);
        ascents.clear();
        ascents.extend((0..m - 1).filter(|&q| perm[q] < perm[q + 1]));
    }
    word
}

/// Rankings obtained by applying the first `cuts[i]` letters of `word` to
/// the identity; `cuts` must be nondecreasing. Consecutive rankings differ
/// by a run of swaps of a reduced word, so the sequence is single-crossing.
pub fn rankings_from_word(m: usize, word: &[usize], cuts: &[usize]) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut applied = 0;
    cuts.iter()
        .map(|&cut| {
            assert!(cut >= applied && cut <= word.len(), "cuts must be nondecreasing prefixes of the word");
            for &p in &word[applied..cut] {
                current.swap(p, p + 1);
            }
            applied = cut;
            current.clone()
        })
        .collect()
}

/// `n` rankings single-crossing in the given order.
fn line_rankings<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<Vec<usize>> {
    let word = random_reduced_word(rng, m);
    let len = rng.gen_range(0..=word.len());
    let mut cuts: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=len)).collect();
    cuts.sort_unstable();
    rankings_from_word(m, &word, &cuts)
}

/// A profile single-crossing on a line: a random prefix of a random reduced
/// word, cut at `n` sorted random points, assigned to shuffled voter labels.
/// Returns the profile and the line order.
pub fn gen_sc_line(seed: u64, n: usize, m: usize) -> Result<(PreferenceProfile, LineOrder)> {
    check_dims(n, m)?;
    let mut rng = rng_from_seed(seed);
    let along = line_rankings(&mut rng, n, m);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rankings = vec![Vec::new(); n];
    for (pos, r) in along.into_iter().enumerate() {
        rankings[order[pos]] = r;
    }
    Ok((PreferenceProfile::borda(rankings)?, LineOrder::new(order)?))
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidN(n));
    }
    if m == 0 {
        return Err(Error::InvalidProfile("at least one candidate is required".into()));
    }
    Ok(())
}

/// How vertex `i` picks its parent among the earlier vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TreeShape {
    /// Uniformly among all earlier vertices (depth about `ln n`).
    #[default]
    Recursive,
    /// Uniformly among the previous three (depth linear in `n`, large
    /// subtrees).
    Deep,
}

/// A random tree of the given shape on shuffled labels.
fn random_tree<R: Rng>(rng: &mut R, n: usize, shape: TreeShape) -> RootedTree {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut parent = vec![None; n];
    for i in 1..n {
        let lo = match shape {
            TreeShape::Recursive => 0,
            TreeShape::Deep => i.saturating_sub(3),
        };
        parent[labels[i]] = Some(labels[rng.gen_range(lo..i)]);
    }
    RootedTree::from_parents(parent, labels[0]).expect("attachment to earlier vertices forms a tree")
}

/// A profile single-crossing on a random recursive tree. The root ranks
/// candidates in label order; walking down from the root, each edge applies
/// a few adjacent swaps of pairs never swapped anywhere else, so every
/// pair's minority side is one subtree.
pub fn gen_sc_tree(seed: u64, n: usize, m: usize) -> Result<(PreferenceProfile, RootedTree)> {
    gen_sc_tree_shaped(seed, n, m, TreeShape::Recursive)
}

/// [`gen_sc_tree`] with a chosen tree shape.
pub fn gen_sc_tree_shaped(seed: u64, n: usize, m: usize, shape: TreeShape) -> Result<(PreferenceProfile, RootedTree)> {
    check_dims(n, m)?;
    let mut rng = rng_from_seed(seed);
    let tree = random_tree(&mut rng, n, shape);
    let mut used = vec![false; m * m];
    let mut rankings = vec![Vec::new(); n];
    rankings[tree.root()] = (0..m).collect();
    for v in tree.pre_order() {
        for &u in tree.children(v) {
            let mut r = rankings[v].clone();
            let swaps = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=2) };
            for _ in 0..swaps {
                let free: Vec<usize> = (0..m.saturating_sub(1))
                    .filter(|&p| !used[r[p] * m + r[p + 1]])
                    .collect();
                let Some(&p) = free.choose(&mut rng) else {
                    break;
                };
                let (a, b) = (r[p], r[p + 1]);
                used[a * m + b] = true;
                used[b * m + a] = true;
                r.swap(p, p + 1);
            }
            rankings[u] = r;
        }
    }
    Ok((PreferenceProfile::borda(rankings)?, tree))
}

/// The star on `n` voters with `m = n` candidates: the centre (voter 0)
/// ranks `0, 1, ..., n-1`; leaf `i` ranks `i` first and the rest as the
/// centre does. The subtree-indexed algorithm of earlier work needs
/// `2^(n-1)` subproblems here; the DP in this crate needs O(n^2 k).
pub fn gen_star_instance(n: usize) -> Result<(PreferenceProfile, RootedTree)> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let rankings = (0..n)
        .map(|i| {
            let mut r = vec![i];
            r.extend((0..n).filter(|&c| c != i));
            r
        })
        .collect();
    let parent = (0..n).map(|v| (v > 0).then_some(0)).collect();
    Ok((PreferenceProfile::borda(rankings)?, RootedTree::from_parents(parent, 0)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// Candidate positions are split into consecutive blocks; each block is
    /// permuted by its own single-crossing sequence indexed by the row or by
    /// the column.
    Product,
    /// A product instance followed by `edits` accepted random swaps of one
    /// adjacent position over a whole half-grid, each kept only if the
    /// result is still single-crossing.
    Rejection { edits: usize, max_attempts: u64 },
}

/// A profile single-crossing on an `n1 x n2` grid.
pub fn gen_sc_grid(seed: u64, n1: usize, n2: usize, m: usize, mode: GridMode) -> Result<(PreferenceProfile, GridShape)> {
    let grid = GridShape::new(n1, n2)?;
    check_dims(grid.len(), m)?;
    let mut rng = rng_from_seed(seed);
    let mut rankings = product_rankings(&mut rng, &grid, m);
    if let GridMode::Rejection { edits, max_attempts } = mode {
        rejection_edits(&mut rng, &grid, m, &mut rankings, edits, max_attempts)?;
    }
    Ok((PreferenceProfile::borda(rankings)?, grid))
}

fn product_rankings<R: Rng>(rng: &mut R, grid: &GridShape, m: usize) -> Vec<Vec<usize>> {
    if grid.n1 == 1 || grid.n2 == 1 {
        // a single line along the long side
        return line_rankings(rng, grid.len(), m);
    }
    let mut rankings = vec![Vec::with_capacity(m); grid.len()];
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && rng.gen_bool(0.5) {
            end += 1;
        }
        let by_row = rng.gen_bool(0.5);
        let len = if by_row { grid.n1 } else { grid.n2 };
        let seq = line_rankings(rng, len, end - start);
        for (v, r) in rankings.iter_mut().enumerate() {
            let (i, j) = grid.coords(v);
            let local = &seq[if by_row { i } else { j }];
            r.extend(local.iter().map(|&c| start + c));
        }
        start = end;
    }
    rankings
}

fn rejection_edits<R: Rng>(
    rng: &mut R,
    grid: &GridShape,
    m: usize,
    rankings: &mut [Vec<usize>],
    edits: usize,
    max_attempts: u64,
) -> Result<()> {
    if m < 2 || edits == 0 {
        return Ok(());
    }
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < edits {
        if attempts == max_attempts {
            return Err(Error::RejectionBudgetExceeded { attempts });
        }
        attempts += 1;
        let by_row = if grid.n1 == 1 {
            false
        } else if grid.n2 == 1 {
            true
        } else {
            rng.gen_bool(0.5)
        };
        let dim = if by_row { grid.n1 } else { grid.n2 };
        if dim < 2 {
            continue;
        }
        let t = rng.gen_range(1..dim);
        let p = rng.gen_range(0..m - 1);
        let half: Vec<usize> = (0..grid.len())
            .filter(|&v| {
                let (i, j) = grid.coords(v);
                (if by_row { i } else { j }) >= t
            })
            .collect();
        for &v in &half {
            rankings[v].swap(p, p + 1);
        }
        let profile = PreferenceProfile::borda(rankings.to_vec())?;
        if check_sc_grid(&profile, grid).is_ok() {
            accepted += 1;
        } else {
            for &v in &half {
                rankings[v].swap(p, p + 1);
            }
        }
    }
    Ok(())
}

/// A random misrepresentation matrix consistent with the rankings: along
/// each ranking values start at 0 and grow by a random step in
/// `0..=max_step`, so ties occur.
pub fn random_consistent_rho(seed: u64, profile: &PreferenceProfile, max_step: i64) -> Rho {
    let mut rng = rng_from_seed(seed);
    let m = profile.num_candidates();
    let mut values = vec![0i64; profile.num_voters() * m];
    for v in 0..profile.num_voters() {
        let mut x = 0;
        for &c in profile.ranking(v) {
            values[v * m + c] = x;
            x += rng.gen_range(0..=max_step);
        }
    }
    Rho::Integer(values)
}

/// Replaces a profile's matrix with [`random_consistent_rho`].
pub fn with_random_rho(seed: u64, profile: &PreferenceProfile, max_step: i64) -> PreferenceProfile {
    let rho = random_consistent_rho(seed, profile, max_step);
    PreferenceProfile::new(profile.rankings(), Some(rho)).expect("same rankings, valid matrix")
}
