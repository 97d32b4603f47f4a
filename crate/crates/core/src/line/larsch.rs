//! Online row minima of a lower-triangular totally monotone matrix.
//!
//! Row `r` may use columns `0..=r`, and the entries of column `c` only become
//! computable once row `c - 1` has been answered. This is the shape of the
//! shortest-path recurrence `E[j] = min_{i<j} E[i] + w(i, j)` with a concave
//! Monge `w`. Amortized O(1) matrix evaluations per row.
//!
//! The recursion alternates two reductions: a row level answers even rows by
//! scanning between the argmins of its odd neighbours (obtained recursively),
//! and a column level keeps only columns that can still be row minima for the
//! half-size subproblem below it.

enum Level {
    Row { n: usize, cur_row: usize, state: usize },
    Col { n: usize, cur_row: usize, cols: Vec<usize> },
}

pub(crate) struct OnlineMinima {
    levels: Vec<Level>,
}

impl OnlineMinima {
    pub(crate) fn new(rows: usize) -> Self {
        let mut levels = Vec::new();
        let mut n = rows;
        loop {
            levels.push(Level::Row {
                n,
                cur_row: 0,
                state: 0,
            });
            if n / 2 == 0 {
                break;
            }
            n /= 2;
            levels.push(Level::Col {
                n,
                cur_row: 0,
                cols: Vec::with_capacity(n),
            });
        }
        Self { levels }
    }

    /// Argmin column of the next row. `f(row, col)` is the matrix entry at the
    /// top level; it is only asked for entries that are already computable.
    pub(crate) fn next_argmin<V, F>(&mut self, f: &F) -> usize
    where
        V: Copy + Ord,
        F: Fn(usize, usize) -> V,
    {
        self.argmin_at(0, f)
    }

    /// Translates `(r, c)` at `level` to top-level coordinates and evaluates.
    fn eval<V, F>(parents: &[Level], level: usize, mut r: usize, mut c: usize, f: &F) -> V
    where
        F: Fn(usize, usize) -> V,
    {
        let mut lvl = level;
        while lvl > 0 {
            match &parents[lvl - 1] {
                // a column level sits below a row level that feeds it odd rows
                Level::Row { .. } => r = 2 * r + 1,
                Level::Col { cols, .. } => c = cols[c],
            }
            lvl -= 1;
        }
        f(r, c)
    }

    fn argmin_at<V, F>(&mut self, level: usize, f: &F) -> usize
    where
        V: Copy + Ord,
        F: Fn(usize, usize) -> V,
    {
        let is_row = matches!(self.levels[level], Level::Row { .. });
        if is_row {
            let (cur, n, prev) = match &mut self.levels[level] {
                Level::Row { n, cur_row, state } => {
                    let cur = *cur_row;
                    *cur_row += 1;
                    (cur, *n, *state)
                }
                Level::Col { .. } => unreachable!(),
            };
            if cur % 2 == 0 {
                let next = if cur + 1 == n {
                    n - 1
                } else {
                    self.argmin_at(level + 1, f)
                };
                if let Level::Row { state, .. } = &mut self.levels[level] {
                    *state = next;
                }
                if prev == next {
                    return prev;
                }
                let parents = &self.levels[..level];
                let mut best_col = prev;
                let mut best = Self::eval(parents, level, cur, prev, f);
                for col in prev + 1..=next {
                    let v = Self::eval(parents, level, cur, col, f);
                    if v < best {
                        best = v;
                        best_col = col;
                    }
                }
                best_col
            } else {
                let parents = &self.levels[..level];
                if Self::eval(parents, level, cur, prev, f) <= Self::eval(parents, level, cur, cur, f) {
                    prev
                } else {
                    cur
                }
            }
        } else {
            {
                let (parents, rest) = self.levels.split_at_mut(level);
                let Level::Col { n, cur_row, cols } = &mut rest[0] else {
                    unreachable!()
                };
                let cur = *cur_row;
                *cur_row += 1;
                let candidates: &[usize] = if cur == 0 { &[0] } else { &[2 * cur - 1, 2 * cur] };
                for &col in candidates {
                    while cols.len() > cur {
                        let size = cols.len();
                        let last = cols[size - 1];
                        if Self::eval(parents, level, size - 1, last, f)
                            > Self::eval(parents, level, size - 1, col, f)
                        {
                            cols.pop();
                        } else {
                            break;
                        }
                    }
                    if cols.len() != *n {
                        cols.push(col);
                    }
                }
            }
            let idx = self.argmin_at(level + 1, f);
            match &self.levels[level] {
                Level::Col { cols, .. } => cols[idx],
                Level::Row { .. } => unreachable!(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Quadratic reference for E[j] = min_{i<j} E[i] + w(i, j).
    fn quadratic(n: usize, w: &dyn Fn(usize, usize) -> i64) -> Vec<i64> {
        let mut e = vec![0i64; n + 1];
        for j in 1..=n {
            e[j] = (0..j).map(|i| e[i] + w(i, j)).min().unwrap();
        }
        e
    }

    fn online(n: usize, w: &dyn Fn(usize, usize) -> i64) -> Vec<i64> {
        let mut e = vec![0i64; n + 1];
        let mut solver = OnlineMinima::new(n);
        for r in 0..n {
            let col = {
                let e = &e;
                solver.next_argmin(&|row: usize, c: usize| {
                    if c > row {
                        i64::MAX / 4
                    } else {
                        e[c] + w(c, row + 1)
                    }
                })
            };
            e[r + 1] = e[col] + w(col, r + 1);
        }
        e
    }

    #[test]
    fn matches_quadratic_on_concave_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..60);
            // f concave => w(i, j) = f(j - i) is concave Monge
            let mut f = vec![0i64; n + 1];
            let mut slope = rng.gen_range(20..40);
            for d in 1..=n {
                slope -= rng.gen_range(0..3);
                f[d] = f[d - 1] + slope;
            }
            let offset: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..5)).collect();
            let penalty = rng.gen_range(0..50);
            let w = move |i: usize, j: usize| f[j - i] + penalty + offset[i] - offset[j];
            assert_eq!(online(n, &w), quadratic(n, &w));
        }
    }

    #[test]
    fn single_row() {
        let w = |_: usize, _: usize| 3i64;
        assert_eq!(online(1, &w), vec![0, 3]);
    }
}
