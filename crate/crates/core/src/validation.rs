//! Recognizers for consistent misrepresentation and single-crossing profiles.
//!
//! Every checker returns the lexicographically first violation it finds
//! (candidate pairs in increasing order, then voters in increasing order), so
//! reports are deterministic.

use crate::profile::PreferenceProfile;
use crate::structure::{GridShape, RootedTree};

/// `voter` prefers `preferred` to `other` but `rho(voter, preferred) >
/// rho(voter, other)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub voter: usize,
    pub preferred: usize,
    pub other: usize,
}

/// `c` is preferred to `c_prime` by `v1` and `v3` but not by `v2`, although
/// `v2` lies between them (on the line, on the tree path, or in the grid
/// box spanned by `v1` and `v3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingViolation {
    pub c: usize,
    pub c_prime: usize,
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
}

pub fn check_consistency(profile: &PreferenceProfile) -> Result<(), ConsistencyViolation> {
    for v in 0..profile.num_voters() {
        for w in profile.ranking(v).windows(2) {
            if profile.rho_at(v, w[0]) > profile.rho_at(v, w[1]) {
                return Err(ConsistencyViolation {
                    voter: v,
                    preferred: w[0],
                    other: w[1],
                });
            }
        }
    }
    Ok(())
}

fn candidate_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |a| (a + 1..m).map(move |b| (a, b)))
}

/// Checks that every candidate pair changes relative order at most once
/// along `order`. O(n m^2).
pub fn check_sc_line(profile: &PreferenceProfile, order: &[usize]) -> Result<(), CrossingViolation> {
    for (a, b) in candidate_pairs(profile.num_candidates()) {
        let first = order[0];
        let initial = profile.prefers(first, a, b);
        let mut flipped_at = None;
        for &v in &order[1..] {
            let side = profile.prefers(v, a, b);
            match flipped_at {
                None if side != initial => flipped_at = Some(v),
                Some(v2) if side == initial => {
                    let (c, c_prime) = if initial { (a, b) } else { (b, a) };
                    return Err(CrossingViolation {
                        c,
                        c_prime,
                        v1: first,
                        v2,
                        v3: v,
                    });
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Checks that for every candidate pair both the voters preferring `a` and
/// those preferring `b` induce connected subtrees. O(n m^2).
pub fn check_sc_tree(profile: &PreferenceProfile, tree: &RootedTree) -> Result<(), CrossingViolation> {
    let n = tree.len();
    let depth = tree.depths();
    let mut side = vec![false; n];
    for (a, b) in candidate_pairs(profile.num_candidates()) {
        for (v, s) in side.iter_mut().enumerate() {
            *s = profile.prefers(v, a, b);
        }
        for (wanted, c, c_prime) in [(true, a, b), (false, b, a)] {
            // A vertex of the set whose parent is outside it starts a component.
            let mut tops = (0..n).filter(|&v| {
                side[v] == wanted && tree.parent(v).is_none_or(|p| side[p] != wanted)
            });
            let (Some(x), Some(y)) = (tops.next(), tops.next()) else {
                continue;
            };
            let v2 = tree
                .path_between(x, y, &depth)
                .into_iter()
                .find(|&u| side[u] != wanted)
                .expect("distinct components are separated by a vertex outside the set");
            return Err(CrossingViolation {
                c,
                c_prime,
                v1: x,
                v2,
                v3: y,
            });
        }
    }
    Ok(())
}

/// Inclusive-exclusive 2D prefix counts of a cell set.
struct Counts {
    n2: usize,
    table: Vec<u32>,
}

impl Counts {
    fn new(grid: &GridShape, member: &[bool]) -> Self {
        let (n1, n2) = (grid.n1, grid.n2);
        let w = n2 + 1;
        let mut table = vec![0u32; (n1 + 1) * w];
        for i in 0..n1 {
            for j in 0..n2 {
                table[(i + 1) * w + j + 1] = u32::from(member[grid.index(i, j)])
                    + table[i * w + j + 1]
                    + table[(i + 1) * w + j]
                    - table[i * w + j];
            }
        }
        Self { n2, table }
    }

    /// Members in rows `i0..=i1`, columns `j0..=j1`.
    fn rect(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> u32 {
        let w = self.n2 + 1;
        self.table[(i1 + 1) * w + j1 + 1] + self.table[i0 * w + j0]
            - self.table[i0 * w + j1 + 1]
            - self.table[(i1 + 1) * w + j0]
    }
}

/// Checks that for every candidate pair the voters on each side form a
/// box-convex set: whenever two cells prefer `c` to `c'`, so does every cell
/// of their bounding box. A cell `u` outside the set violates this exactly
/// when two opposite closed quadrants around `u` both meet the set. O(n m^2).
pub fn check_sc_grid(profile: &PreferenceProfile, grid: &GridShape) -> Result<(), CrossingViolation> {
    let (n1, n2) = (grid.n1, grid.n2);
    let mut member = vec![false; grid.len()];
    for (a, b) in candidate_pairs(profile.num_candidates()) {
        for (wanted, c, c_prime) in [(true, a, b), (false, b, a)] {
            for (v, slot) in member.iter_mut().enumerate() {
                *slot = profile.prefers(v, a, b) == wanted;
            }
            let counts = Counts::new(grid, &member);
            for u in 0..grid.len() {
                if member[u] {
                    continue;
                }
                let (i, j) = grid.coords(u);
                let nw = (0, i, 0, j);
                let se = (i, n1 - 1, j, n2 - 1);
                let ne = (0, i, j, n2 - 1);
                let sw = (i, n1 - 1, 0, j);
                for (q1, q2) in [(nw, se), (ne, sw)] {
                    if counts.rect(q1.0, q1.1, q1.2, q1.3) > 0
                        && counts.rect(q2.0, q2.1, q2.2, q2.3) > 0
                    {
                        let first_in = |q: (usize, usize, usize, usize)| {
                            (q.0..=q.1)
                                .flat_map(|r| (q.2..=q.3).map(move |s| grid.index(r, s)))
                                .filter(|&x| member[x])
                                .min()
                                .expect("quadrant count is positive")
                        };
                        let (s, t) = (first_in(q1), first_in(q2));
                        return Err(CrossingViolation {
                            c,
                            c_prime,
                            v1: s.min(t),
                            v2: u,
                            v3: s.max(t),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Rho;

    #[test]
    fn borda_is_consistent() {
        let p = PreferenceProfile::borda(vec![vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        assert_eq!(check_consistency(&p), Ok(()));
    }

    #[test]
    fn inconsistent_rho_is_reported() {
        let p = PreferenceProfile::new(vec![vec![0, 1]], Some(Rho::Integer(vec![1, 0]))).unwrap();
        assert_eq!(
            check_consistency(&p),
            Err(ConsistencyViolation {
                voter: 0,
                preferred: 0,
                other: 1
            })
        );
    }

    #[test]
    fn identical_rankings_are_single_crossing() {
        let p = PreferenceProfile::borda(vec![vec![1, 0, 2]; 5]).unwrap();
        assert_eq!(check_sc_line(&p, &[3, 1, 4, 0, 2]), Ok(()));
    }

    #[test]
    fn double_crossing_on_line() {
        let p = PreferenceProfile::borda(vec![vec![0, 1], vec![1, 0], vec![0, 1]]).unwrap();
        let v = check_sc_line(&p, &[0, 1, 2]).unwrap_err();
        assert_eq!((v.c, v.c_prime, v.v1, v.v2, v.v3), (0, 1, 0, 1, 2));
    }

    #[test]
    fn tree_disconnected_side() {
        // star: root 0 prefers 1>0, leaves 1 and 2 prefer 0>1
        let p = PreferenceProfile::borda(vec![vec![1, 0], vec![0, 1], vec![0, 1]]).unwrap();
        let t = RootedTree::from_parents(vec![None, Some(0), Some(0)], 0).unwrap();
        let v = check_sc_tree(&p, &t).unwrap_err();
        assert_eq!((v.c, v.c_prime, v.v1, v.v2, v.v3), (0, 1, 1, 0, 2));
    }

    #[test]
    fn grid_box_violation() {
        // (1,1),(2,2) prefer a>b, (1,2) prefers b>a
        let p = PreferenceProfile::borda(vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![0, 1]])
            .unwrap();
        let g = GridShape::new(2, 2).unwrap();
        let v = check_sc_grid(&p, &g).unwrap_err();
        assert_eq!((v.c, v.c_prime, v.v2), (0, 1, 1));
        assert_eq!((v.v1, v.v3), (0, 3));
    }
}
