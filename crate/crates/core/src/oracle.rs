//! Exhaustive reference solvers. Deliberately naive: every committee (or
//! every tiling) is tried and scored directly.

use std::time::Instant;

use crate::assignment::{canonicalize, Assignment, SolveResult, Stats};
use crate::cost::{Cost, Objective};
use crate::error::{Error, Result};
use crate::grid::{enumerate_tilings, GridPrefix, GridSolution, Rect, Tiling};
use crate::profile::{with_rho, PreferenceProfile};
use crate::structure::GridShape;

/// Default cap on committees or tilings enumerated by the oracles.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

fn binomial(n: usize, r: usize) -> u64 {
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Number of committees with between 1 and `k` members out of `m`.
pub fn committee_count(m: usize, k: usize) -> u64 {
    (1..=k.min(m)).fold(0u64, |acc, s| acc.saturating_add(binomial(m, s)))
}

/// Best member of `committee` for voter `v`: lowest misrepresentation,
/// then lowest index.
fn best_member<C: Cost>(row: &[C], committee: &[usize]) -> usize {
    let mut best = committee[0];
    for &c in &committee[1..] {
        if row[c] < row[best] {
            best = c;
        }
    }
    best
}

fn search<C: Cost>(values: &[C], n: usize, m: usize, k: usize, objective: Objective) -> (Vec<usize>, u64) {
    let mut best_cost = C::infinity();
    let mut best: Vec<usize> = Vec::new();
    let mut tried = 0u64;
    'sizes: for size in 1..=k.min(m) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            let mut total = C::zero();
            for v in 0..n {
                let row = &values[v * m..(v + 1) * m];
                total = objective.combine(total, row[best_member(row, &comb)]);
            }
            if total < best_cost {
                best_cost = total;
                best = comb.clone();
                if total == C::zero() {
                    break 'sizes;
                }
            }
            // next combination in lexicographic order
            let Some(pos) = (0..size).rev().find(|&p| comb[p] < m - size + p) else {
                break;
            };
            comb[pos] += 1;
            for q in pos + 1..size {
                comb[q] = comb[q - 1] + 1;
            }
        }
    }
    let rep = (0..n)
        .map(|v| best_member(&values[v * m..(v + 1) * m], &best))
        .collect();
    (rep, tried)
}

/// Optimal committee of size at most `k` by trying all of them, smallest
/// sizes first and lexicographically within a size. The first optimum found
/// is returned. Ignores any structure on the voters.
pub fn brute_force(profile: &PreferenceProfile, k: usize, objective: Objective, budget: u64) -> Result<SolveResult> {
    let start = Instant::now();
    let (n, m) = (profile.num_voters(), profile.num_candidates());
    if k < 1 {
        return Err(Error::InvalidK { k, max: m });
    }
    if committee_count(m, k) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let (rep, tried) = with_rho!(profile.rho(), values => search(values, n, m, k, objective));
    let assignment = canonicalize(profile, &Assignment::new(rep));
    let stats = Stats::from([
        ("committees".to_string(), tried),
        ("wall_time_us".to_string(), start.elapsed().as_micros() as u64),
    ]);
    Ok(SolveResult::new(profile, assignment, "oracle", stats))
}

fn best_tiling<C: Cost>(values: &[C], m: usize, grid: &GridShape, k: usize, budget: u64) -> Result<(Tiling, u64)> {
    let prefix = GridPrefix::new(values, m, grid);
    let mut best: Option<(C, Vec<Rect>)> = None;
    let count = enumerate_tilings(grid, k, budget, |rects| {
        let total = rects
            .iter()
            .fold(C::zero(), |acc, r| acc.plus(prefix.rect_cost(r).0));
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            best = Some((total, rects.to_vec()));
        }
    })?;
    let (_, rects) = best.expect("every grid has at least one tiling");
    let reps = rects.iter().map(|r| prefix.rect_cost(r).1).collect();
    Ok((Tiling::with_reps(rects, reps), count))
}

/// Cheapest partition of the grid into at most `k` rectangles, each served
/// by its cheapest candidate, over all partitions.
pub fn brute_force_tiling(profile: &PreferenceProfile, grid: &GridShape, k: usize, budget: u64) -> Result<GridSolution> {
    let start = Instant::now();
    crate::grid::check_grid_input(profile, grid, k)?;
    let m = profile.num_candidates();
    let (best, count) = with_rho!(profile.rho(), values => best_tiling(values, m, grid, k, budget))?;
    let stats = Stats::from([
        ("tilings".to_string(), count),
        ("wall_time_us".to_string(), start.elapsed().as_micros() as u64),
    ]);
    Ok(crate::grid::grid_solution(profile, grid, best, "oracle-tiling", stats))
}
