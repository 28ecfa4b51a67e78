//! `u32` vertex sets.

pub type VertexSet = u32;

#[inline]
pub fn bit(v: usize) -> VertexSet {
    1 << v
}

/// `{0, .., n-1}`.
#[inline]
pub fn full(n: usize) -> VertexSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Members in increasing order.
pub fn iter(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}
