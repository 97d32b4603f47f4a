use std::time::Instant;

use num_rational::Rational64;

use super::{GridPrefix, GridSolution, Rect, Tiling};
use crate::assignment::{Assignment, SolveResult, Stats};
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::oracle::brute_force_tiling;
use crate::profile::{with_rho, CandidateRelabel, PreferenceProfile};
use crate::structure::GridShape;
use crate::validation::check_sc_grid;

#[derive(Debug, Clone, Copy)]
enum Choice {
    /// One rectangle.
    Const,
    /// Same as with one rectangle fewer.
    Fewer,
    /// Columns `..=at` get `first` rectangles, the rest the remainder.
    Vert { at: u32, first: u32 },
    /// Rows `..=at` get `first` rectangles, the rest the remainder.
    Hor { at: u32, first: u32 },
}

struct LaminarTable<C> {
    n1: usize,
    n2: usize,
    budget: usize,
    offset: Vec<usize>,
    value: Vec<C>,
    choice: Vec<Choice>,
}

impl<C: Cost> LaminarTable<C> {
    #[inline]
    fn id(&self, r: &Rect) -> usize {
        ((r.i0 * self.n1 + r.i1) * self.n2 + r.j0) * self.n2 + r.j1
    }

    #[inline]
    fn cap(&self, r: &Rect) -> usize {
        self.budget.min(r.area())
    }

    /// Best cost of `r` with at most `l` rectangles, `1 <= l <= cap(r)`.
    #[inline]
    fn get(&self, r: &Rect, l: usize) -> C {
        self.value[self.offset[self.id(r)] + l - 1]
    }

    fn build(prefix: &GridPrefix<C>, grid: &GridShape, budget: usize) -> Self {
        let (n1, n2) = (grid.n1, grid.n2);
        let mut t = Self {
            n1,
            n2,
            budget,
            offset: vec![usize::MAX; n1 * n1 * n2 * n2],
            value: Vec::new(),
            choice: Vec::new(),
        };
        // Both halves of any cut are lower or narrower, so growing height,
        // then width, visits every part before the rectangles it splits.
        for h in 1..=n1 {
            for w in 1..=n2 {
                for i0 in 0..=n1 - h {
                    for j0 in 0..=n2 - w {
                        let r = Rect::new(i0, i0 + h - 1, j0, j0 + w - 1);
                        t.fill(prefix, &r);
                    }
                }
            }
        }
        t
    }

    fn fill(&mut self, prefix: &GridPrefix<C>, r: &Rect) {
        let cap = self.cap(r);
        let id = self.id(r);
        let base = self.value.len();
        self.offset[id] = base;
        let single = prefix.rect_cost(r).0;
        for l in 1..=cap {
            let (mut best, mut how) = if l == 1 {
                (single, Choice::Const)
            } else {
                (self.value[base + l - 2], Choice::Fewer)
            };
            if l > 1 {
                for j in r.j0..r.j1 {
                    let left = Rect { j1: j, ..*r };
                    let right = Rect { j0: j + 1, ..*r };
                    let (cl, cr) = (self.cap(&left), self.cap(&right));
                    for first in l.saturating_sub(cr).max(1)..=cl.min(l - 1) {
                        let v = self.get(&left, first).plus(self.get(&right, l - first));
                        if v < best {
                            best = v;
                            how = Choice::Vert {
                                at: j as u32,
                                first: first as u32,
                            };
                        }
                    }
                }
                for i in r.i0..r.i1 {
                    let top = Rect { i1: i, ..*r };
                    let bottom = Rect { i0: i + 1, ..*r };
                    let (ct, cb) = (self.cap(&top), self.cap(&bottom));
                    for first in l.saturating_sub(cb).max(1)..=ct.min(l - 1) {
                        let v = self.get(&top, first).plus(self.get(&bottom, l - first));
                        if v < best {
                            best = v;
                            how = Choice::Hor {
                                at: i as u32,
                                first: first as u32,
                            };
                        }
                    }
                }
            }
            self.value.push(best);
            self.choice.push(how);
        }
    }

    fn reconstruct(&self, prefix: &GridPrefix<C>, root: Rect, l: usize) -> Vec<(Rect, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(root, l)];
        while let Some((r, l)) = stack.pop() {
            match self.choice[self.offset[self.id(&r)] + l - 1] {
                Choice::Const => out.push((r, prefix.rect_cost(&r).1)),
                Choice::Fewer => stack.push((r, l - 1)),
                Choice::Vert { at, first } => {
                    let (at, first) = (at as usize, first as usize);
                    stack.push((Rect { j0: at + 1, ..r }, l - first));
                    stack.push((Rect { j1: at, ..r }, first));
                }
                Choice::Hor { at, first } => {
                    let (at, first) = (at as usize, first as usize);
                    stack.push((Rect { i0: at + 1, ..r }, l - first));
                    stack.push((Rect { i1: at, ..r }, first));
                }
            }
        }
        out.sort_unstable_by_key(|(r, _)| (r.i0, r.j0));
        out
    }
}

pub(crate) fn check_grid_input(profile: &PreferenceProfile, grid: &GridShape, k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidK { k, max: grid.len() });
    }
    if grid.len() != profile.num_voters() {
        return Err(Error::InvalidStructure(format!(
            "{}x{} grid has {} cells but the profile has {} voters",
            grid.n1,
            grid.n2,
            grid.len(),
            profile.num_voters()
        )));
    }
    Ok(())
}

/// Packs a tiling with representatives (original labels) into a solution.
pub(crate) fn grid_solution(
    profile: &PreferenceProfile,
    grid: &GridShape,
    tiling: Tiling,
    algorithm: &str,
    stats: Stats,
) -> GridSolution {
    let rep = tiling.to_rep(grid).expect("solver tilings carry representatives");
    GridSolution {
        result: SolveResult::new(profile, Assignment::new(rep), algorithm, stats),
        tiling,
    }
}

fn run_laminar(profile: &PreferenceProfile, grid: &GridShape, budget: usize, algorithm: &str) -> GridSolution {
    let start = Instant::now();
    let (n, m) = (profile.num_voters(), profile.num_candidates());
    if cfg!(debug_assertions) && n.saturating_mul(m * m) <= 1_000_000 {
        if let Err(v) = check_sc_grid(profile, grid) {
            panic!("grid solver called on a profile that is not single-crossing: {v:?}");
        }
    }
    let budget = budget.min(grid.len());
    let relabel = CandidateRelabel::from_reference(profile.ranking(0));
    let norm = profile.relabel_candidates(&relabel);
    let (parts, states) = with_rho!(norm.rho(), values => {
        let prefix = GridPrefix::new(values, m, grid);
        let table = LaminarTable::build(&prefix, grid, budget);
        let full = Rect::full(grid);
        (table.reconstruct(&prefix, full, table.cap(&full)), table.value.len() as u64)
    });
    let (rects, reps): (Vec<Rect>, Vec<usize>) = parts.into_iter().map(|(r, c)| (r, relabel.to_old[c])).unzip();
    let mut stats = Stats::from([
        ("states".to_string(), states),
        ("rect_budget".to_string(), budget as u64),
    ]);
    stats.insert("wall_time_us".into(), start.elapsed().as_micros() as u64);
    grid_solution(profile, grid, Tiling::with_reps(rects, reps), algorithm, stats)
}

/// Optimal cost over laminar tilings with at most `k` rectangles, with the
/// witnessing tiling. Representatives are the cheapest candidate of each
/// rectangle; the assignment is reported as the tiling induces it.
pub fn solve_grid_laminar(profile: &PreferenceProfile, grid: &GridShape, k: usize) -> Result<GridSolution> {
    check_grid_input(profile, grid, k)?;
    Ok(run_laminar(profile, grid, k, "grid-laminar"))
}

/// The laminar program with `k^2` rectangles (capped at the number of
/// cells). Its cost is at most the best cost of any `k`-tiling, laminar or
/// not, at the price of up to `k^2` committee members.
pub fn solve_grid_bicriterial(profile: &PreferenceProfile, grid: &GridShape, k: usize) -> Result<GridSolution> {
    check_grid_input(profile, grid, k)?;
    Ok(run_laminar(profile, grid, k.saturating_mul(k), "grid-bicriterial"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjectureOutcome {
    /// Some optimal `k`-tiling is laminar; both optima equal `cost`.
    Holds { cost: Rational64 },
    /// The exhaustive optimum beats every laminar tiling.
    Counterexample {
        tiling: Tiling,
        laminar_cost: Rational64,
        optimal_cost: Rational64,
    },
}

impl ConjectureOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ConjectureOutcome::Holds { .. })
    }

    /// Laminar cost minus exhaustive optimum (zero when it holds).
    pub fn gap(&self) -> Rational64 {
        match self {
            ConjectureOutcome::Holds { .. } => Rational64::from_integer(0),
            ConjectureOutcome::Counterexample {
                laminar_cost,
                optimal_cost,
                ..
            } => laminar_cost - optimal_cost,
        }
    }
}

/// Compares the laminar optimum against the best of all enumerated
/// `k`-tilings.
pub fn check_laminar_conjecture(
    profile: &PreferenceProfile,
    grid: &GridShape,
    k: usize,
    budget: u64,
) -> Result<ConjectureOutcome> {
    let laminar = solve_grid_laminar(profile, grid, k)?;
    let best = brute_force_tiling(profile, grid, k, budget)?;
    Ok(if best.cost() < laminar.cost() {
        ConjectureOutcome::Counterexample {
            tiling: best.tiling,
            laminar_cost: laminar.cost(),
            optimal_cost: best.result.total_cost,
        }
    } else {
        ConjectureOutcome::Holds {
            cost: laminar.cost(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::is_laminar;
    use num_traits::Zero;

    /// Candidates 0, 1 flip between the first and second column, 2, 3
    /// between the first and second row; 0, 1 are always ranked above 2, 3.
    fn product(n1: usize, n2: usize) -> (PreferenceProfile, GridShape) {
        let grid = GridShape::new(n1, n2).unwrap();
        let rankings = (0..grid.len())
            .map(|v| {
                let (i, j) = grid.coords(v);
                let mut r = if j == 0 { vec![0, 1] } else { vec![1, 0] };
                r.extend(if i == 0 { [2, 3] } else { [3, 2] });
                r
            })
            .collect();
        let p = PreferenceProfile::borda(rankings).unwrap();
        assert!(check_sc_grid(&p, &grid).is_ok());
        (p, grid)
    }

    #[test]
    fn single_rect_is_column_minimum() {
        let (p, g) = product(2, 3);
        let s = solve_grid_laminar(&p, &g, 1).unwrap();
        assert_eq!(s.tiling.len(), 1);
        // candidate 1 misrepresents only the first column
        assert_eq!(s.cost(), Rational64::from_integer(2));
        assert_eq!(s.result.committee(), &[1]);
    }

    #[test]
    fn all_cells_available() {
        let (p, g) = product(2, 2);
        let s = solve_grid_laminar(&p, &g, 4).unwrap();
        assert!(s.cost().is_zero());
        assert!(s.tiling.check_partition(&g).is_ok());
        assert!(is_laminar(&s.tiling, &g));
    }

    #[test]
    fn nonincreasing_in_k() {
        let (p, g) = product(3, 3);
        let costs: Vec<_> = (1..=9).map(|k| solve_grid_laminar(&p, &g, k).unwrap().cost()).collect();
        assert!(costs.windows(2).all(|w| w[1] <= w[0]));
        assert!(costs[8].is_zero());
    }

    #[test]
    fn bicriterial_k1_equals_laminar() {
        let (p, g) = product(2, 3);
        let a = solve_grid_bicriterial(&p, &g, 1).unwrap();
        let b = solve_grid_laminar(&p, &g, 1).unwrap();
        assert_eq!(a.cost(), b.cost());
    }

    #[test]
    fn conjecture_holds_small() {
        let (p, g) = product(2, 3);
        for k in 1..=4 {
            assert!(check_laminar_conjecture(&p, &g, k, 1_000_000).unwrap().holds());
        }
    }
}
