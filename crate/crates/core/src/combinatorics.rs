//! Small counting helpers shared by the enumeration code.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        let num = (n - i) as u128;
        match acc.checked_mul(num) {
            Some(v) => acc = v / (i as u128 + 1),
            None => {
                let g = gcd(acc, i as u128 + 1);
                let reduced = acc / g;
                let den = (i as u128 + 1) / g;
                match reduced.checked_mul(num / den) {
                    Some(v) if num.is_multiple_of(den) => acc = v,
                    _ => return u128::MAX,
                }
            }
        }
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Smallest `h` with `2^h >= k`.
pub fn ceil_log2(k: u64) -> u32 {
    if k <= 1 {
        0
    } else {
        64 - (k - 1).leading_zeros()
    }
}

/// Lexicographic successor of a strictly increasing 0-based combination of
/// `[0, n)`. Returns `false` once the last combination has been passed.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The combination of lexicographic rank `rank` among the k-subsets of `[0, n)`.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0usize;
    for slot in 0..k {
        loop {
            let remaining = (k - slot - 1) as u64;
            let with_x = binomial((n - x - 1) as u64, remaining);
            if rank < with_x {
                out.push(x);
                x += 1;
                break;
            }
            rank -= with_x;
            x += 1;
        }
    }
    out
}

/// Iterator over the k-subsets of `[0, n)` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        if cur.is_empty() || !next_combination(cur, self.n) {
            self.current = None;
        }
        Some(out)
    }
}

/// Relative ranks of `keys` (0-based), packed four bits per entry.
/// Two key tuples induce the same order iff their packed codes agree.
#[inline]
pub fn packed_pattern(keys: &[u64]) -> u64 {
    debug_assert!(keys.len() <= 16);
    let mut code = 0u64;
    for (j, &kj) in keys.iter().enumerate() {
        let r = keys.iter().filter(|&&kl| kl < kj).count() as u64;
        code |= r << (4 * j);
    }
    code
}

/// Lehmer-code index in `[0, s!)` of the order induced by distinct `keys`.
pub fn pattern_index(keys: &[u64]) -> usize {
    let s = keys.len();
    let mut idx = 0usize;
    for j in 0..s {
        let smaller_after = keys[j + 1..].iter().filter(|&&x| x < keys[j]).count();
        idx = idx * (s - j) + smaller_after;
    }
    idx
}

/// Relative ranks (0-based) whose [`pattern_index`] is `idx`.
pub fn lehmer_decode(mut idx: usize, s: usize) -> Vec<usize> {
    let mut digits = vec![0usize; s];
    for j in (0..s).rev() {
        let radix = s - j;
        digits[j] = idx % radix;
        idx /= radix;
    }
    let mut available: Vec<usize> = (0..s).collect();
    digits.into_iter().map(|c| available.remove(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(64, 4), 635_376);
        assert_eq!(binomial(16, 4), 1_820);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        let n: u128 = 1 << 32;
        assert_eq!(
            binomial(1 << 32, 4),
            n * (n - 1) * (n - 2) / 6 * (n - 3) / 4
        );
        assert_eq!(binomial(u64::MAX, 10), u128::MAX);
    }

    #[test]
    fn unrank_agrees_with_iteration() {
        for (rank, comb) in Combinations::new(7, 3).enumerate() {
            assert_eq!(unrank_combination(7, 3, rank as u128), comb);
        }
        assert_eq!(Combinations::new(7, 3).count(), 35);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn lehmer_index_is_a_bijection() {
        let mut seen = std::collections::BTreeSet::new();
        let mut keys = [0u64, 1, 2, 3];
        loop {
            seen.insert(pattern_index(&keys));
            // next permutation
            let mut i = keys.len() - 1;
            while i > 0 && keys[i - 1] >= keys[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = keys.len() - 1;
            while keys[j] <= keys[i - 1] {
                j -= 1;
            }
            keys.swap(i - 1, j);
            keys[i..].reverse();
        }
        assert_eq!(seen.len(), 24);
        assert_eq!(*seen.iter().max().unwrap(), 23);
        assert_eq!(pattern_index(&[10, 20, 30]), 0);
        assert_eq!(pattern_index(&[30, 20, 10]), 5);
        for idx in 0..120 {
            let ranks: Vec<u64> = lehmer_decode(idx, 5)
                .into_iter()
                .map(|r| r as u64)
                .collect();
            assert_eq!(pattern_index(&ranks), idx);
        }
    }

    #[test]
    fn log2_ceiling() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1 << 32), 32);
    }
}
