//! Naive reference implementations used only by the integration tests.
//! None of them calls into the solvers they check.
#![allow(dead_code)]

use ccsc_core::{GridShape, Objective, PreferenceProfile, RootedTree};
use num_rational::Rational64;

/// Optimal Chamberlin–Courant cost by trying every candidate subset of size
/// 1..=k as a bitmask.
pub fn naive_cc(profile: &PreferenceProfile, k: usize, objective: Objective) -> Rational64 {
    let (n, m) = (profile.num_voters(), profile.num_candidates());
    assert!(m < 20, "bitmask oracle is for small m");
    let mut best: Option<Rational64> = None;
    for mask in 1u32..(1 << m) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let mut total = Rational64::from_integer(0);
        for v in 0..n {
            let here = (0..m)
                .filter(|c| mask >> c & 1 == 1)
                .map(|c| profile.rho_at(v, c))
                .min()
                .unwrap();
            total = match objective {
                Objective::Utilitarian => total + here,
                Objective::Egalitarian => total.max(here),
            };
        }
        if best.is_none_or(|b| total < b) {
            best = Some(total);
        }
    }
    best.unwrap()
}

/// Direct evaluation of an assignment.
pub fn naive_cost(profile: &PreferenceProfile, rep: &[usize], objective: Objective) -> Rational64 {
    let values = rep.iter().enumerate().map(|(v, &c)| profile.rho_at(v, c));
    match objective {
        Objective::Utilitarian => values.sum(),
        Objective::Egalitarian => values.max().unwrap_or(Rational64::from_integer(0)),
    }
}

fn prefers(p: &PreferenceProfile, v: usize, a: usize, b: usize) -> bool {
    let r = p.ranking(v);
    r.iter().position(|&x| x == a) < r.iter().position(|&x| x == b)
}

/// Every pair changes relative order at most once along the order.
pub fn naive_sc_line(p: &PreferenceProfile, order: &[usize]) -> bool {
    let m = p.num_candidates();
    for a in 0..m {
        for b in a + 1..m {
            let flips = order
                .windows(2)
                .filter(|w| prefers(p, w[0], a, b) != prefers(p, w[1], a, b))
                .count();
            if flips > 1 {
                return false;
            }
        }
    }
    true
}

fn adjacency(tree: &RootedTree) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); tree.len()];
    for v in 0..tree.len() {
        if let Some(p) = tree.parent(v) {
            adj[v].push(p);
            adj[p].push(v);
        }
    }
    adj
}

/// Whether `members` (a voter subset) induces a connected subgraph.
pub fn connected(adj: &[Vec<usize>], members: &[bool]) -> bool {
    let Some(start) = members.iter().position(|&x| x) else {
        return true;
    };
    let mut seen = vec![false; members.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if members[u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    members.iter().zip(&seen).all(|(&m, &s)| !m || s)
}

pub fn tree_adjacency(tree: &RootedTree) -> Vec<Vec<usize>> {
    adjacency(tree)
}

/// For every pair both sides of the split are connected in the tree.
pub fn naive_sc_tree(p: &PreferenceProfile, tree: &RootedTree) -> bool {
    let adj = adjacency(tree);
    let m = p.num_candidates();
    for a in 0..m {
        for b in a + 1..m {
            let side: Vec<bool> = (0..p.num_voters()).map(|v| prefers(p, v, a, b)).collect();
            let other: Vec<bool> = side.iter().map(|x| !x).collect();
            if !connected(&adj, &side) || !connected(&adj, &other) {
                return false;
            }
        }
    }
    true
}

/// A cell set is closed under bounding boxes of its pairs.
pub fn box_convex(grid: &GridShape, members: &[bool]) -> bool {
    let cells: Vec<(usize, usize)> = (0..grid.len()).filter(|&v| members[v]).map(|v| grid.coords(v)).collect();
    for &(i1, j1) in &cells {
        for &(i2, j2) in &cells {
            for i in i1.min(i2)..=i1.max(i2) {
                for j in j1.min(j2)..=j1.max(j2) {
                    if !members[grid.index(i, j)] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Both sides of every pair are closed under shortest grid paths.
pub fn naive_sc_grid(p: &PreferenceProfile, grid: &GridShape) -> bool {
    let m = p.num_candidates();
    for a in 0..m {
        for b in a + 1..m {
            let side: Vec<bool> = (0..p.num_voters()).map(|v| prefers(p, v, a, b)).collect();
            let other: Vec<bool> = side.iter().map(|x| !x).collect();
            if !box_convex(grid, &side) || !box_convex(grid, &other) {
                return false;
            }
        }
    }
    true
}

/// A cell set equals its bounding box.
pub fn is_rectangle(grid: &GridShape, members: &[bool]) -> bool {
    let cells: Vec<(usize, usize)> = (0..grid.len()).filter(|&v| members[v]).map(|v| grid.coords(v)).collect();
    if cells.is_empty() {
        return true;
    }
    let (i0, i1) = (cells.iter().map(|c| c.0).min().unwrap(), cells.iter().map(|c| c.0).max().unwrap());
    let (j0, j1) = (cells.iter().map(|c| c.1).min().unwrap(), cells.iter().map(|c| c.1).max().unwrap());
    cells.len() == (i1 - i0 + 1) * (j1 - j0 + 1)
}

/// Subtree sizes by walking every vertex's ancestor chain.
pub fn naive_subtree_sizes(tree: &RootedTree) -> Vec<usize> {
    let mut size = vec![0; tree.len()];
    for v in 0..tree.len() {
        let mut x = Some(v);
        while let Some(u) = x {
            size[u] += 1;
            x = tree.parent(u);
        }
    }
    size
}

/// A test-parameter RNG, separate from the generator's stream for the
/// same seed.
pub fn param_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    ccsc_core::generators::rng_from_seed(seed.wrapping_add(0x5EED_0000_0000))
}
