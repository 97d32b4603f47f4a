//! Grid-structured profiles: rectangle tilings and the laminar tiling DP.
//!
//! On a grid single-crossing profile, each committee member's voters form
//! an axis-aligned rectangle, so winner determination is a search over
//! partitions of the grid into at most `k` rectangles. The dynamic program
//! covers laminar (recursively guillotine-cut) tilings; the bicriterial
//! variant runs it with `k^2` rectangles, which is never worse than the best
//! unrestricted `k`-tiling.

mod laminar;
mod tiling;

use num_rational::Rational64;

use crate::assignment::SolveResult;
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::structure::GridShape;

pub use laminar::{check_laminar_conjecture, solve_grid_bicriterial, solve_grid_laminar, ConjectureOutcome};
pub use tiling::{enumerate_tilings, is_laminar, refine_to_laminar};

pub(crate) use laminar::{check_grid_input, grid_solution};

/// Rows `i0..=i1`, columns `j0..=j1` (0-based, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub i0: usize,
    pub i1: usize,
    pub j0: usize,
    pub j1: usize,
}

impl Rect {
    pub fn new(i0: usize, i1: usize, j0: usize, j1: usize) -> Self {
        debug_assert!(i0 <= i1 && j0 <= j1);
        Self { i0, i1, j0, j1 }
    }

    pub fn full(grid: &GridShape) -> Self {
        Self::new(0, grid.n1 - 1, 0, grid.n2 - 1)
    }

    pub fn cell(i: usize, j: usize) -> Self {
        Self::new(i, i, j, j)
    }

    pub fn height(&self) -> usize {
        self.i1 - self.i0 + 1
    }

    pub fn width(&self) -> usize {
        self.j1 - self.j0 + 1
    }

    pub fn area(&self) -> usize {
        self.height() * self.width()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (self.i0..=self.i1).contains(&i) && (self.j0..=self.j1).contains(&j)
    }

    pub fn fits(&self, grid: &GridShape) -> bool {
        self.i0 <= self.i1 && self.j0 <= self.j1 && self.i1 < grid.n1 && self.j1 < grid.n2
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.i0..=self.i1).flat_map(move |i| (self.j0..=self.j1).map(move |j| (i, j)))
    }
}

/// A partition of the grid into rectangles, optionally with one
/// representative candidate per rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub rects: Vec<Rect>,
    pub reps: Option<Vec<usize>>,
}

impl Tiling {
    pub fn new(rects: Vec<Rect>) -> Self {
        Self { rects, reps: None }
    }

    pub fn with_reps(rects: Vec<Rect>, reps: Vec<usize>) -> Self {
        assert_eq!(rects.len(), reps.len());
        Self {
            rects,
            reps: Some(reps),
        }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Errors unless the rectangles lie in the grid, are pairwise disjoint
    /// and cover every cell.
    pub fn check_partition(&self, grid: &GridShape) -> Result<()> {
        let mut owner = vec![usize::MAX; grid.len()];
        for (idx, r) in self.rects.iter().enumerate() {
            if !r.fits(grid) {
                return Err(Error::InvalidTiling(format!("rectangle {r:?} leaves the grid")));
            }
            for (i, j) in r.cells() {
                let slot = &mut owner[grid.index(i, j)];
                if *slot != usize::MAX {
                    return Err(Error::InvalidTiling(format!(
                        "rectangles {:?} and {r:?} overlap at ({i}, {j})",
                        self.rects[*slot]
                    )));
                }
                *slot = idx;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            let (i, j) = grid.coords(v);
            return Err(Error::InvalidTiling(format!("cell ({i}, {j}) is not covered")));
        }
        Ok(())
    }

    /// Per-voter representatives; `None` without reps.
    pub fn to_rep(&self, grid: &GridShape) -> Option<Vec<usize>> {
        let reps = self.reps.as_ref()?;
        let mut rep = vec![0; grid.len()];
        for (r, &c) in self.rects.iter().zip(reps) {
            for (i, j) in r.cells() {
                rep[grid.index(i, j)] = c;
            }
        }
        Some(rep)
    }
}

/// Per-candidate 2D prefix sums of a grid profile's misrepresentation.
#[derive(Debug, Clone)]
pub struct GridPrefix<C> {
    n2: usize,
    m: usize,
    // entry ((i * (n2 + 1)) + j) * m + c: sum over rows < i, cols < j
    sums: Vec<C>,
}

impl<C: Cost> GridPrefix<C> {
    pub fn new(rho: &[C], m: usize, grid: &GridShape) -> Self {
        let (n1, n2) = (grid.n1, grid.n2);
        let w = n2 + 1;
        let mut sums = vec![C::zero(); (n1 + 1) * w * m];
        for i in 0..n1 {
            for j in 0..n2 {
                let v = grid.index(i, j);
                for c in 0..m {
                    let at = |a: usize, b: usize| (a * w + b) * m + c;
                    sums[at(i + 1, j + 1)] = rho[v * m + c]
                        .plus(sums[at(i, j + 1)])
                        .plus(sums[at(i + 1, j)])
                        .minus(sums[at(i, j)]);
                }
            }
        }
        Self { n2, m, sums }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        (i * (self.n2 + 1) + j) * self.m
    }

    pub fn rect_sum(&self, r: &Rect, c: usize) -> C {
        let (a, b, cc, d) = (
            self.at(r.i1 + 1, r.j1 + 1),
            self.at(r.i0, r.j0),
            self.at(r.i0, r.j1 + 1),
            self.at(r.i1 + 1, r.j0),
        );
        self.sums[a + c]
            .plus(self.sums[b + c])
            .minus(self.sums[cc + c])
            .minus(self.sums[d + c])
    }

    /// Cheapest single representative for the rectangle, ties to the
    /// smallest candidate.
    pub fn rect_cost(&self, r: &Rect) -> (C, usize) {
        let mut best = self.rect_sum(r, 0);
        let mut arg = 0;
        for c in 1..self.m {
            let s = self.rect_sum(r, c);
            if s < best {
                best = s;
                arg = c;
            }
        }
        (best, arg)
    }
}

/// A grid solver's answer: the result over voters plus the tiling that
/// witnesses it. `result.total_cost` equals the tiling's cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolution {
    pub result: SolveResult,
    pub tiling: Tiling,
}

impl GridSolution {
    pub fn cost(&self) -> Rational64 {
        self.result.total_cost
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_sums_match_direct() {
        let grid = GridShape::new(2, 3).unwrap();
        let m = 2;
        let rho: Vec<i64> = (0..12).map(|x| (x * 7 % 5) as i64).collect();
        let p = GridPrefix::new(&rho, m, &grid);
        for i0 in 0..2 {
            for i1 in i0..2 {
                for j0 in 0..3 {
                    for j1 in j0..3 {
                        let r = Rect::new(i0, i1, j0, j1);
                        for c in 0..m {
                            let direct: i64 = r.cells().map(|(i, j)| rho[grid.index(i, j) * m + c]).sum();
                            assert_eq!(p.rect_sum(&r, c), direct);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_checks() {
        let grid = GridShape::new(2, 2).unwrap();
        let ok = Tiling::new(vec![Rect::new(0, 1, 0, 0), Rect::new(0, 1, 1, 1)]);
        assert!(ok.check_partition(&grid).is_ok());
        let overlap = Tiling::new(vec![Rect::new(0, 1, 0, 0), Rect::new(0, 1, 0, 1)]);
        assert!(matches!(overlap.check_partition(&grid), Err(Error::InvalidTiling(_))));
        let gap = Tiling::new(vec![Rect::new(0, 1, 0, 0)]);
        assert!(gap.check_partition(&grid).is_err());
    }
}
