//! Fixed-width bitset kernels used by the adjacency rows and the search
//! working sets. All sets over the same vertex universe share a block
//! count `w = ceil(n / 64)`; trailing bits past `n` are always zero.

pub(crate) fn blocks_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline(always)]
pub(crate) fn get(bits: &[u64], i: usize) -> bool {
    bits[i / 64] & (1u64 << (i % 64)) != 0
}

#[inline(always)]
pub(crate) fn set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1u64 << (i % 64);
}

#[inline(always)]
pub(crate) fn clear(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1u64 << (i % 64));
}

pub(crate) fn count(bits: &[u64]) -> usize {
    bits.iter().map(|b| b.count_ones() as usize).sum()
}

pub(crate) fn is_empty(bits: &[u64]) -> bool {
    bits.iter().all(|&b| b == 0)
}

/// Popcount of `a & b` without materializing the intersection.
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

pub(crate) fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

/// True iff every set bit of `a` is also set in `b`.
pub(crate) fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Indices of set bits, ascending.
pub(crate) fn ones(bits: &[u64]) -> impl Iterator<Item = usize> + '_ {
    bits.iter().enumerate().flat_map(|(bi, &block)| {
        let mut b = block;
        std::iter::from_fn(move || {
            if b == 0 {
                None
            } else {
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(bi * 64 + t)
            }
        })
    })
}

/// A mask with bits `0..n` set.
pub(crate) fn full(n: usize) -> Vec<u64> {
    let w = blocks_for(n);
    let mut v = vec![u64::MAX; w];
    let tail = n % 64;
    if tail != 0 {
        v[w - 1] = (1u64 << tail) - 1;
    }
    if n == 0 {
        v.clear();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_crosses_block_boundary() {
        let mut v = vec![0u64; 2];
        for i in [0, 63, 64, 100] {
            set(&mut v, i);
        }
        assert_eq!(ones(&v).collect::<Vec<_>>(), vec![0, 63, 64, 100]);
        assert_eq!(count(&v), 4);
        clear(&mut v, 64);
        assert!(!get(&v, 64));
        assert_eq!(count(&v), 3);
    }

    #[test]
    fn full_masks_tail() {
        assert_eq!(full(0), Vec::<u64>::new());
        assert_eq!(full(1), vec![1]);
        assert_eq!(full(64), vec![u64::MAX]);
        assert_eq!(full(65), vec![u64::MAX, 1]);
        assert_eq!(count(&full(130)), 130);
    }

    #[test]
    fn subset_and_counts() {
        let a = vec![0b1010u64];
        let b = vec![0b1110u64];
        assert!(is_subset(&a, &b));
        assert!(!is_subset(&b, &a));
        assert_eq!(and_count(&a, &b), 2);
    }
}
