//! Bit-vector helpers shared by the context and lattice code.

use fixedbitset::FixedBitSet;

/// A subset of a context's objects, indexed by object position.
pub type ObjectSet = FixedBitSet;
/// A subset of a context's attributes, indexed by attribute position.
pub type AttributeSet = FixedBitSet;

pub fn empty(len: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(len)
}

pub fn full(len: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    set.insert_range(..);
    set
}

pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    set.extend(indices);
    set
}

pub fn intersection(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    out.intersect_with(b);
    out
}

pub fn is_proper_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    crate::metrics::bump_subset_tests();
    a.is_subset(b) && a.count_ones(..) < b.count_ones(..)
}

pub fn is_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    crate::metrics::bump_subset_tests();
    a.is_subset(b)
}

/// Copy of `set` with position `index` removed; higher positions shift down by one.
pub fn without_index(set: &FixedBitSet, index: usize) -> FixedBitSet {
    let len = set.len();
    assert!(index < len, "index {index} out of range {len}");
    let mut out = FixedBitSet::with_capacity(len - 1);
    for i in set.ones() {
        match i.cmp(&index) {
            std::cmp::Ordering::Less => out.insert(i),
            std::cmp::Ordering::Greater => out.insert(i - 1),
            std::cmp::Ordering::Equal => {}
        }
    }
    out
}

/// Copy of `set` grown by one position, which is set to `bit`.
pub fn with_appended(set: &FixedBitSet, bit: bool) -> FixedBitSet {
    let mut out = set.clone();
    let len = out.len();
    out.grow(len + 1);
    out.set(len, bit);
    out
}
