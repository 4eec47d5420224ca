//! Small combinatorial helpers shared across the crate.

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Signed binomial helper for alternating sums.
pub fn binomial_i64(n: usize, k: usize) -> i64 {
    i64::try_from(binomial(n, k)).expect("binomial coefficient overflows i64")
}

/// All `k`-element subsets of `{1..=n}` as increasing vectors, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Bitmask with bit `p - 1` set for every position `p` in `positions`.
pub fn mask_of(positions: &[usize]) -> u128 {
    positions.iter().fold(0u128, |m, &p| m | (1u128 << (p - 1)))
}

/// Positions (1-indexed, increasing) of the set bits of `mask`.
pub fn positions_of(mask: u128) -> Vec<usize> {
    Bits(mask).collect()
}

/// Iterator over the 1-indexed positions of set bits, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u128);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// Mask with the low `n` bits set.
pub fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Removes position `p` from a set, shifting every larger element down by one.
pub fn remove_and_shift(set: &[usize], p: usize) -> Vec<usize> {
    set.iter()
        .filter(|&&x| x != p)
        .map(|&x| if x > p { x - 1 } else { x })
        .collect()
}

/// 1-indexed position of `value` inside the increasing list `list`.
pub fn position_in(list: &[usize], value: usize) -> Option<usize> {
    list.iter().position(|&x| x == value).map(|i| i + 1)
}

pub fn format_set(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(36, 4), 58905);
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = subsets(4, 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], vec![1, 2]);
        assert_eq!(s[5], vec![3, 4]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn shift_removal() {
        assert_eq!(remove_and_shift(&[3, 6, 8], 3), vec![5, 7]);
        assert_eq!(remove_and_shift(&[3, 6, 8], 6), vec![3, 7]);
        assert_eq!(remove_and_shift(&[3, 6, 8], 8), vec![3, 6]);
    }

    #[test]
    fn bit_iteration() {
        assert_eq!(positions_of(0b1011), vec![1, 2, 4]);
        assert_eq!(mask_of(&[1, 2, 4]), 0b1011);
        assert_eq!(positions_of(1u128 << 127), vec![128]);
    }
}
