//! Lexicographic k-subsets of `{0, .., n-1}` with ranking for chunked
//! parallel iteration.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// The `rank`-th k-subset in lexicographic order, or `None` past the end.
pub fn unrank(n: usize, k: usize, mut rank: u128) -> Option<Vec<usize>> {
    if rank >= binomial(n, k) {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        let mut c = next;
        loop {
            let block = binomial(n - c - 1, remaining);
            if rank < block {
                break;
            }
            rank -= block;
            c += 1;
        }
        out.push(c);
        next = c + 1;
    }
    Some(out)
}

/// Advances to the next k-subset in lexicographic order.
pub fn advance(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
