//! Lexicographic enumeration of column t-sets.

/// Advances `c` (strictly increasing, entries `< k`) to the next t-subset of
/// `0..k` in lexicographic order. Returns `false` after the last one.
pub fn next_tset(c: &mut [usize], k: usize) -> bool {
    let t = c.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if c[i] < k - t + i {
            c[i] += 1;
            for j in i + 1..t {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterator over all t-subsets of `0..k` in lexicographic order.
#[derive(Debug, Clone)]
pub struct TSets {
    k: usize,
    cur: Vec<usize>,
    done: bool,
}

impl TSets {
    pub fn new(k: usize, t: usize) -> Self {
        TSets {
            k,
            cur: (0..t).collect(),
            done: t > k,
        }
    }
}

impl Iterator for TSets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        self.done = !next_tset(&mut self.cur, self.k);
        Some(out)
    }
}

/// `C(n, r)` as an exact integer, or `None` on overflow.
pub fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let all: Vec<_> = TSets::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(TSets::new(3, 3).count(), 1);
        assert_eq!(TSets::new(2, 3).count(), 0);
    }

    #[test]
    fn counts_match_binomial() {
        for k in 1..12u64 {
            for t in 1..=k {
                assert_eq!(
                    TSets::new(k as usize, t as usize).count() as u64,
                    binomial(k, t).unwrap()
                );
            }
        }
        assert_eq!(binomial(20, 6), Some(38760));
        assert_eq!(binomial(4096, 2048), None);
    }
}
