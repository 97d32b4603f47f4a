//! Winner determination for profiles single-crossing on a rooted tree.
//!
//! After relabeling so the root ranks candidates `0 < 1 < ... < m-1`, an
//! optimal committee partitions the tree into connected parts whose
//! representatives never decrease away from the root. For a vertex `v` with
//! children `u_1, ..., u_p` let `T(v, i)` be `v` together with the subtrees of
//! `u_i, ..., u_p`. The program keeps, for `l` parts and candidate `c`:
//!
//! * `one[v][l][c]`: best cost of the subtree of `v` in `l` parts, `v`
//!   represented by `c` and every other part by a candidate after `c`;
//! * `zero[v][l][c]`: the same with `v` represented by any candidate `>= c`;
//! * `part(v, i)[l][c]`: the analogue of `one` for `T(v, i)`, built from
//!   `part(v, i + 1)` by either cutting the edge to `u_i` (`u_i` starts a part
//!   with a later candidate) or keeping it (`u_i` shares `c`).
//!
//! The double loop over part counts is bounded by the subtree sizes, which
//! keeps the total work at O(nmk).

use std::time::Instant;

use crate::assignment::{canonicalize, Assignment, SolveResult, Stats};
use crate::cost::{with_aggregate, Aggregate, Cost, Objective};
use crate::error::{Error, Result};
use crate::profile::{with_rho, CandidateRelabel, PreferenceProfile};
use crate::structure::RootedTree;
use crate::validation::check_sc_tree;

/// `|T_v|` for every vertex and `|T(v, i)|` for `i = 1..=n_v + 1`, stored at
/// `partial[v][i - 1]`. The last entry of each row is 1 (just `v`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeSizes {
    pub size: Vec<usize>,
    pub partial: Vec<Vec<usize>>,
}

pub fn subtree_sizes(tree: &RootedTree) -> SubtreeSizes {
    let n = tree.len();
    let mut size = vec![1; n];
    let mut partial = vec![Vec::new(); n];
    for v in tree.post_order() {
        let kids = tree.children(v);
        let mut row = vec![1; kids.len() + 1];
        for i in (0..kids.len()).rev() {
            row[i] = row[i + 1] + size[kids[i]];
        }
        size[v] = row[0];
        partial[v] = row;
    }
    SubtreeSizes { size, partial }
}

const SAME_FLAG: u32 = 1 << 31;

/// Tables of the whole run. Per-vertex tables are stored `[c][l - 1]`.
struct Tables<C> {
    m: usize,
    /// `min(k, |T_v|)`
    width: Vec<usize>,
    offset: Vec<usize>,
    zero: Vec<C>,
    one: Vec<C>,
    /// Per vertex, the start of the choice plane of each child edge.
    choice_offset: Vec<Vec<usize>>,
    /// Per vertex, `min(k, |T(v, i)|)` for each child edge.
    choice_width: Vec<Vec<usize>>,
    choices: Vec<u32>,
    pairs: u64,
}

impl<C: Cost> Tables<C> {
    #[inline]
    fn at(&self, v: usize, l: usize, c: usize) -> usize {
        self.offset[v] + c * self.width[v] + (l - 1)
    }

    #[inline]
    fn zero_at(&self, v: usize, l: usize, c: usize) -> C {
        if c >= self.m {
            C::infinity()
        } else {
            self.zero[self.at(v, l, c)]
        }
    }
}

/// `rho` holds one row per vertex in post-order (row `p` belongs to
/// `tree.post_order()[p]`).
fn tree_dp<C: Cost, A: Aggregate>(rho: &[C], m: usize, tree: &RootedTree, k: usize) -> Tables<C> {
    let n = tree.len();
    let sizes = subtree_sizes(tree);
    let inf = C::infinity();
    let width: Vec<usize> = sizes.size.iter().map(|&s| s.min(k)).collect();
    // Tables are laid out in processing order so a vertex's children sit
    // close to it in memory.
    let order = tree.post_order();
    let mut offset = vec![0; n];
    let mut total = 0;
    for &v in &order {
        offset[v] = total;
        total += width[v] * m;
    }
    let mut choice_offset = vec![Vec::new(); n];
    let mut choice_width = vec![Vec::new(); n];
    let mut choice_total = 0;
    for &v in &order {
        for i in 0..tree.children(v).len() {
            let w = sizes.partial[v][i].min(k);
            choice_offset[v].push(choice_total);
            choice_width[v].push(w);
            choice_total += w * m;
        }
    }
    let mut t = Tables {
        m,
        width,
        offset,
        zero: vec![inf; total],
        one: vec![inf; total],
        choice_offset,
        choice_width,
        choices: vec![0; choice_total],
        pairs: 0,
    };

    let mut cur: Vec<C> = Vec::new();
    let mut next: Vec<C> = Vec::new();
    let mut key: Vec<u32> = Vec::new();
    for (p, &v) in order.iter().enumerate() {
        let kids = tree.children(v);
        // part(v, n_v + 1): only v itself, one part.
        let mut cur_w = 1;
        cur.clear();
        cur.extend_from_slice(&rho[p * m..(p + 1) * m]);
        for i in (0..kids.len()).rev() {
            let u = kids[i];
            let lu = t.width[u];
            let new_w = t.choice_width[v][i];
            next.clear();
            next.resize(new_w * m, inf);
            key.clear();
            key.resize(new_w * m, u32::MAX);
            let base = t.choice_offset[v][i];
            let mut pairs = 0u64;
            for c in 0..m {
                let prev_row = &cur[c * cur_w..(c + 1) * cur_w];
                let row = &mut next[c * new_w..(c + 1) * new_w];
                let keys = &mut key[c * new_w..(c + 1) * new_w];
                for tt in 1..=lu {
                    let cut = t.zero_at(u, tt, c + 1);
                    let keep = t.one[t.at(u, tt, c)];
                    let xmax = cur_w.min(k + 1 - tt);
                    pairs += xmax as u64;
                    for x in 1..=xmax {
                        let prev = prev_row[x - 1];
                        // keep the edge: parts l = x + t - 1
                        let l = x + tt - 1;
                        let val = A::combine(keep, prev);
                        let k_same = tt as u32;
                        if val < row[l - 1] || (val == row[l - 1] && k_same < keys[l - 1]) {
                            row[l - 1] = val;
                            keys[l - 1] = k_same;
                        }
                        // cut the edge: parts l = x + t
                        if x + tt <= k {
                            let l = x + tt;
                            let val = A::combine(cut, prev);
                            let k_diff = SAME_FLAG | tt as u32;
                            if val < row[l - 1] || (val == row[l - 1] && k_diff < keys[l - 1]) {
                                row[l - 1] = val;
                                keys[l - 1] = k_diff;
                            }
                        }
                    }
                }
            }
            if m > 0 {
                t.pairs += pairs / m as u64;
            }
            // keys hold "same = t" and "diff = FLAG | t"; store the inverse
            // flag so SAME_FLAG marks a kept edge.
            for (slot, &kv) in t.choices[base..base + new_w * m].iter_mut().zip(key.iter()) {
                *slot = if kv == u32::MAX {
                    0
                } else if kv & SAME_FLAG != 0 {
                    kv & !SAME_FLAG
                } else {
                    kv | SAME_FLAG
                };
            }
            std::mem::swap(&mut cur, &mut next);
            cur_w = new_w;
        }
        debug_assert_eq!(cur_w, t.width[v]);
        let w = t.width[v];
        let off = t.offset[v];
        t.one[off..off + w * m].copy_from_slice(&cur[..w * m]);
        for c in (0..m).rev() {
            for l in 1..=w {
                let here = t.one[off + c * w + l - 1];
                let later = t.zero_at(v, l, c + 1);
                t.zero[off + c * w + l - 1] = here.min(later);
            }
        }
    }
    t
}

/// Follows the stored choices from the root; returns normalized reps.
fn reconstruct<C: Cost>(t: &Tables<C>, tree: &RootedTree, l: usize) -> Vec<usize> {
    enum Task {
        Zero { v: usize, l: usize, c: usize },
        One { v: usize, l: usize, c: usize },
    }
    let mut rep = vec![0; tree.len()];
    let mut stack = vec![Task::Zero {
        v: tree.root(),
        l,
        c: 0,
    }];
    while let Some(task) = stack.pop() {
        match task {
            Task::Zero { v, l, c } => {
                let target = t.zero_at(v, l, c);
                let c1 = (c..t.m)
                    .find(|&c1| t.one[t.at(v, l, c1)] == target)
                    .expect("zero table is a suffix minimum of the one table");
                stack.push(Task::One { v, l, c: c1 });
            }
            Task::One { v, mut l, c } => {
                rep[v] = c;
                for (i, &u) in tree.children(v).iter().enumerate() {
                    let w = t.choice_width[v][i];
                    let choice = t.choices[t.choice_offset[v][i] + c * w + l - 1];
                    let tt = (choice & !SAME_FLAG) as usize;
                    debug_assert!(tt >= 1, "reconstruction reached an infeasible state");
                    if choice & SAME_FLAG != 0 {
                        stack.push(Task::One { v: u, l: tt, c });
                        l = l + 1 - tt;
                    } else {
                        stack.push(Task::Zero { v: u, l: tt, c: c + 1 });
                        l -= tt;
                    }
                }
                debug_assert_eq!(l, 1);
            }
        }
    }
    rep
}

/// Optimal committee of size at most `k` for a profile single-crossing on
/// `tree`, in O(nmk) time.
pub fn solve_tree_dp(
    profile: &PreferenceProfile,
    tree: &RootedTree,
    k: usize,
    objective: Objective,
) -> Result<SolveResult> {
    let start = Instant::now();
    let (n, m) = (profile.num_voters(), profile.num_candidates());
    if k < 1 || k > m {
        return Err(Error::InvalidK { k, max: m });
    }
    if tree.len() != n {
        return Err(Error::InvalidStructure(format!(
            "tree has {} vertices but the profile has {} voters",
            tree.len(),
            n
        )));
    }
    if cfg!(debug_assertions) && n.saturating_mul(m * m) <= 1_000_000 {
        if let Err(v) = check_sc_tree(profile, tree) {
            panic!("tree solver called on a profile that is not single-crossing: {v:?}");
        }
    }

    let mut stats = Stats::new();
    let assignment = if k >= n {
        Assignment::new((0..n).map(|v| profile.top(v)).collect())
    } else {
        let relabel = CandidateRelabel::from_reference(profile.ranking(tree.root()));
        let rows = profile.permuted_rho(&tree.post_order(), &relabel);
        let (rep, pairs, states) = with_rho!(&rows, values => {
            with_aggregate!(objective, A => {
                let t = tree_dp::<_, A>(values, m, tree, k);
                let root = tree.root();
                let best_l = (1..=t.width[root])
                    .min_by_key(|&l| t.zero_at(root, l, 0))
                    .expect("the root table has at least one part count");
                (reconstruct(&t, tree, best_l), t.pairs, t.zero.len() as u64)
            })
        });
        stats.insert("pairs_per_candidate".into(), pairs);
        stats.insert("states".into(), states);
        Assignment::new(rep).relabel(&relabel.inverse())
    };
    let assignment = canonicalize(profile, &assignment);
    stats.insert("wall_time_us".into(), start.elapsed().as_micros() as u64);
    Ok(SolveResult::new(profile, assignment, "tree-dp", stats))
}
