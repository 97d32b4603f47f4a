use crate::cost::{Aggregate, Cost};

/// One bit per DP state, recording which branch of a `min` won.
pub(crate) struct ChoiceBits {
    words: Vec<u64>,
}

impl ChoiceBits {
    pub(crate) fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, idx: usize) {
        self.words[idx >> 6] |= 1 << (idx & 63);
    }

    #[inline]
    pub(crate) fn get(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }
}

pub(crate) struct LineDpOutput<C> {
    pub cost: C,
    pub rep: Vec<usize>,
    pub states: u64,
}

/// The O(nmk) line program on a normalized instance (voters in line order,
/// first voter ranking `0 < 1 < ... < m-1`).
///
/// `dyp1[i][l][c]`: best cost of voters `i..n` using exactly `l` candidates
/// from `c..m` with voter `i` represented by `c`.
/// `dyp0[i][l][c]`: same without the constraint on voter `i`.
///
/// Only the planes for `i` and `i + 1` are kept; the winning branch of each
/// `min` is stored as a bit for reconstruction.
pub(crate) fn line_dp<C: Cost, A: Aggregate>(rho: &[C], n: usize, m: usize, k: usize) -> LineDpOutput<C> {
    let inf = C::infinity();
    let width = m + 1;
    let plane = (k + 1) * width;
    let mut next0 = vec![inf; plane];
    let mut next1 = vec![inf; plane];
    let mut cur0 = vec![inf; plane];
    let mut cur1 = vec![inf; plane];
    // bit set => dyp0 skipped c (took dyp0[.][l][c+1])
    let mut skip = ChoiceBits::new(n * k * m);
    // bit set => dyp1 switched to a new candidate for voter i+1
    let mut switch = ChoiceBits::new(n * k * m);
    let bit = |i: usize, l: usize, c: usize| (i * k + (l - 1)) * m + c;
    let mut states = 0u64;

    for i in (0..n).rev() {
        let lmax_i = k.min(n - i);
        let row = &rho[i * m..(i + 1) * m];
        for c in (0..m).rev() {
            let lmax = lmax_i.min(m - c);
            let r = row[c];
            for l in 1..=lmax {
                let d1 = if i + 1 == n {
                    r
                } else {
                    let stay = next1[l * width + c];
                    let change = if l > 1 { next0[(l - 1) * width + c + 1] } else { inf };
                    if stay <= change {
                        A::combine(r, stay)
                    } else {
                        switch.set(bit(i, l, c));
                        A::combine(r, change)
                    }
                };
                cur1[l * width + c] = d1;
                let later = cur0[l * width + c + 1];
                cur0[l * width + c] = if d1 <= later {
                    d1
                } else {
                    skip.set(bit(i, l, c));
                    later
                };
            }
            states += lmax as u64;
        }
        std::mem::swap(&mut cur0, &mut next0);
        std::mem::swap(&mut cur1, &mut next1);
    }

    // After the final swap the i = 0 plane lives in `next0`.
    let mut best = inf;
    let mut best_l = 1;
    for l in 1..=k.min(n).min(m) {
        let v = next0[l * width];
        if v < best {
            best = v;
            best_l = l;
        }
    }

    let mut rep = vec![0; n];
    let (mut l, mut c) = (best_l, 0);
    let mut i = 0;
    'outer: loop {
        while skip.get(bit(i, l, c)) {
            c += 1;
        }
        loop {
            rep[i] = c;
            if i + 1 == n {
                break 'outer;
            }
            let changed = switch.get(bit(i, l, c));
            i += 1;
            if changed {
                l -= 1;
                c += 1;
                continue 'outer;
            }
        }
    }

    LineDpOutput {
        cost: best,
        rep,
        states,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{Max, Sum};

    fn three_voter_rho() -> Vec<i64> {
        vec![0, 1, 2, 1, 0, 2, 2, 0, 1]
    }

    #[test]
    fn three_voter_k1() {
        let out = line_dp::<i64, Sum>(&three_voter_rho(), 3, 3, 1);
        assert_eq!(out.cost, 1);
        assert_eq!(out.rep, vec![1, 1, 1]);
    }

    #[test]
    fn three_voter_k2() {
        let out = line_dp::<i64, Sum>(&three_voter_rho(), 3, 3, 2);
        assert_eq!(out.cost, 0);
        assert_eq!(out.rep, vec![0, 1, 1]);
    }

    #[test]
    fn three_voter_egalitarian() {
        let out = line_dp::<i64, Max>(&three_voter_rho(), 3, 3, 1);
        assert_eq!(out.cost, 1);
    }

    #[test]
    fn states_bounded() {
        let out = line_dp::<i64, Sum>(&three_voter_rho(), 3, 3, 3);
        assert!(out.states <= 2 * 3 * 3 * 3);
        assert_eq!(out.cost, 0);
    }

    #[test]
    fn choice_bits() {
        let mut b = ChoiceBits::new(130);
        b.set(0);
        b.set(129);
        assert!(b.get(0) && b.get(129) && !b.get(64));
    }
}
