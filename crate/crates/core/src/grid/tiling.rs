use std::collections::BTreeSet;

use super::{Rect, Tiling};
use crate::error::{Error, Result};
use crate::structure::GridShape;

/// Calls `visit` once for every partition of the grid into at most `k`
/// rectangles and returns how many there were. Each tiling is produced by
/// repeatedly covering the first uncovered cell (row-major) with a rectangle
/// anchored at its top-left corner, so none is produced twice.
///
/// Fails with `BudgetExceeded` as soon as more than `budget` tilings have
/// been produced.
pub fn enumerate_tilings<F>(grid: &GridShape, k: usize, budget: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&[Rect]),
{
    struct Walk<'a, F> {
        grid: &'a GridShape,
        k: usize,
        budget: u64,
        count: u64,
        covered: Vec<bool>,
        rects: Vec<Rect>,
        visit: F,
    }

    impl<F: FnMut(&[Rect])> Walk<'_, F> {
        fn go(&mut self, from: usize) -> Result<()> {
            let Some(start) = (from..self.grid.len()).find(|&v| !self.covered[v]) else {
                self.count += 1;
                if self.count > self.budget {
                    return Err(Error::BudgetExceeded { budget: self.budget });
                }
                (self.visit)(&self.rects);
                return Ok(());
            };
            if self.rects.len() == self.k {
                return Ok(());
            }
            let (i, j) = self.grid.coords(start);
            let n2 = self.grid.n2;
            let mut j1 = j;
            while j1 < n2 && !self.covered[self.grid.index(i, j1)] {
                let mut i1 = i;
                while i1 < self.grid.n1 && (j..=j1).all(|c| !self.covered[self.grid.index(i1, c)]) {
                    let r = Rect::new(i, i1, j, j1);
                    self.mark(&r, true);
                    self.rects.push(r);
                    let res = self.go(start + 1);
                    self.rects.pop();
                    self.mark(&r, false);
                    res?;
                    i1 += 1;
                }
                j1 += 1;
            }
            Ok(())
        }

        fn mark(&mut self, r: &Rect, value: bool) {
            for (i, j) in r.cells() {
                self.covered[self.grid.index(i, j)] = value;
            }
        }
    }

    let mut walk = Walk {
        grid,
        k,
        budget,
        count: 0,
        covered: vec![false; grid.len()],
        rects: Vec::with_capacity(k),
        visit: &mut visit,
    };
    walk.go(0)?;
    Ok(walk.count)
}

/// Whether the tiling can be obtained by recursive full-width or
/// full-height cuts. Any cut that no rectangle straddles may be taken first.
pub fn is_laminar(tiling: &Tiling, grid: &GridShape) -> bool {
    fn split(rects: &[Rect], frame: Rect) -> bool {
        if rects.len() <= 1 {
            return true;
        }
        for r in frame.i0 + 1..=frame.i1 {
            if rects.iter().all(|x| x.i1 < r || x.i0 >= r) {
                let (top, bottom): (Vec<Rect>, Vec<Rect>) = rects.iter().partition(|x| x.i1 < r);
                return split(&top, Rect { i1: r - 1, ..frame }) && split(&bottom, Rect { i0: r, ..frame });
            }
        }
        for c in frame.j0 + 1..=frame.j1 {
            if rects.iter().all(|x| x.j1 < c || x.j0 >= c) {
                let (left, right): (Vec<Rect>, Vec<Rect>) = rects.iter().partition(|x| x.j1 < c);
                return split(&left, Rect { j1: c - 1, ..frame }) && split(&right, Rect { j0: c, ..frame });
            }
        }
        false
    }
    split(&tiling.rects, Rect::full(grid))
}

/// Cuts the grid along every row and column boundary used by the tiling.
/// The result refines the input (each new rectangle lies inside one old
/// rectangle and inherits its representative) and is laminar.
pub fn refine_to_laminar(tiling: &Tiling, grid: &GridShape) -> Result<Tiling> {
    tiling.check_partition(grid)?;
    let xs: Vec<usize> = tiling
        .rects
        .iter()
        .flat_map(|r| [r.i0, r.i1 + 1])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ys: Vec<usize> = tiling
        .rects
        .iter()
        .flat_map(|r| [r.j0, r.j1 + 1])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rects = Vec::with_capacity((xs.len() - 1) * (ys.len() - 1));
    let mut reps = Vec::new();
    for x in xs.windows(2) {
        for y in ys.windows(2) {
            let r = Rect::new(x[0], x[1] - 1, y[0], y[1] - 1);
            if let Some(old) = &tiling.reps {
                let owner = tiling
                    .rects
                    .iter()
                    .position(|o| o.contains(r.i0, r.j0))
                    .expect("a partition covers every cell");
                reps.push(old[owner]);
            }
            rects.push(r);
        }
    }
    Ok(match tiling.reps {
        Some(_) => Tiling::with_reps(rects, reps),
        None => Tiling::new(rects),
    })
}
