use crate::cost::Cost;
use crate::error::{Error, Result};

/// Per-candidate running sums of misrepresentation along the line:
/// `sum(j, c) = rho(v_1, c) + ... + rho(v_j, c)` for `j` in `0..=n`.
#[derive(Debug, Clone)]
pub struct PrefixSums<C> {
    n: usize,
    m: usize,
    // row j holds the m sums over the first j voters
    sums: Vec<C>,
}

impl<C: Cost> PrefixSums<C> {
    /// `rho` is row-major over the profile's voters; `order` lists the voters
    /// along the line.
    pub fn new(rho: &[C], m: usize, order: &[usize]) -> Self {
        let n = order.len();
        let mut sums = Vec::with_capacity((n + 1) * m);
        sums.extend(std::iter::repeat_n(C::zero(), m));
        for (j, &v) in order.iter().enumerate() {
            for c in 0..m {
                let prev = sums[j * m + c];
                sums.push(prev.plus(rho[v * m + c]));
            }
        }
        Self { n, m, sums }
    }

    pub fn num_voters(&self) -> usize {
        self.n
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn sum(&self, j: usize, c: usize) -> C {
        self.sums[j * self.m + c]
    }

    /// Total misrepresentation of voters `i+1..=j` (1-based) for candidate `c`.
    #[inline]
    pub fn segment(&self, i: usize, j: usize, c: usize) -> C {
        self.sums[j * self.m + c].minus(self.sums[i * self.m + c])
    }

    /// Minimum over candidates of the segment sum, with the smallest
    /// minimizing candidate. Requires `i < j <= n`.
    #[inline]
    pub(crate) fn omega_unchecked(&self, i: usize, j: usize) -> (C, usize) {
        let hi = &self.sums[j * self.m..(j + 1) * self.m];
        let lo = &self.sums[i * self.m..(i + 1) * self.m];
        let mut best = hi[0].minus(lo[0]);
        let mut arg = 0;
        for c in 1..self.m {
            let w = hi[c].minus(lo[c]);
            if w < best {
                best = w;
                arg = c;
            }
        }
        (best, arg)
    }

    /// The weight of arc `i -> j` in the k-link DAG together with the
    /// representative achieving it (ties to the smallest candidate).
    pub fn omega(&self, i: usize, j: usize) -> Result<(C, usize)> {
        if i >= j || j > self.n {
            return Err(Error::SegmentOutOfRange { i, j, n: self.n });
        }
        Ok(self.omega_unchecked(i, j))
    }
}

/// Returns the first `(i, j)` (row-major) with
/// `omega(i, j) + omega(i+1, j+1) > omega(i, j+1) + omega(i+1, j)`
/// over `0 < i+1 < j < n`.
pub fn check_concave_monge<C: Cost>(prefix: &PrefixSums<C>) -> std::result::Result<(), (usize, usize)> {
    let n = prefix.num_voters();
    if n < 4 {
        return Ok(());
    }
    // weights[i][j] for i < j <= n
    let mut weights = vec![C::zero(); (n + 1) * (n + 1)];
    for i in 0..n {
        for j in i + 1..=n {
            weights[i * (n + 1) + j] = prefix.omega_unchecked(i, j).0;
        }
    }
    let w = |i: usize, j: usize| weights[i * (n + 1) + j];
    for i in 0..n {
        for j in i + 2..n {
            if w(i, j).plus(w(i + 1, j + 1)) > w(i, j + 1).plus(w(i + 1, j)) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_voter_rho() -> Vec<i64> {
        // Borda rows of (1,2,3), (2,1,3), (2,3,1)
        vec![0, 1, 2, 1, 0, 2, 2, 0, 1]
    }

    #[test]
    fn single_voter_table() {
        let p = PrefixSums::new(&[3i64, 0, 7], 3, &[0]);
        for c in 0..3 {
            assert_eq!(p.sum(0, c), 0);
        }
        assert_eq!(p.sum(1, 2), 7);
    }

    #[test]
    fn last_row_is_column_total() {
        let rho = three_voter_rho();
        let p = PrefixSums::new(&rho, 3, &[0, 1, 2]);
        assert_eq!(p.sum(3, 0), 3);
        assert_eq!(p.sum(3, 1), 1);
        assert_eq!(p.sum(3, 2), 5);
    }

    #[test]
    fn omega_examples() {
        let rho = three_voter_rho();
        let p = PrefixSums::new(&rho, 3, &[0, 1, 2]);
        assert_eq!(p.omega(0, 3).unwrap(), (1, 1));
        for i in 0..3 {
            assert_eq!(p.omega(i, i + 1).unwrap().0, 0);
        }
        assert!(p.omega(2, 2).is_err());
        assert!(p.omega(0, 4).is_err());
    }

    #[test]
    fn omega_on_identical_voters() {
        let rho = vec![2i64, 1, 3, 2, 1, 3, 2, 1, 3, 2, 1, 3];
        let p = PrefixSums::new(&rho, 3, &[0, 1, 2, 3]);
        assert_eq!(p.omega(1, 4).unwrap(), (3, 1));
    }

    #[test]
    fn short_lines_are_vacuously_monge() {
        let rho = three_voter_rho();
        let p = PrefixSums::new(&rho, 3, &[0, 1, 2]);
        assert_eq!(check_concave_monge(&p), Ok(()));
    }

    #[test]
    fn non_single_crossing_can_break_monge() {
        // voters alternate between two opposite rankings
        let rho = vec![0i64, 5, 5, 0, 0, 5, 5, 0];
        let p = PrefixSums::new(&rho, 2, &[0, 1, 2, 3]);
        assert!(check_concave_monge(&p).is_err());
    }
}
