//! Per-thread instrumentation counters.
//!
//! Counters are thread-local so concurrent test threads do not interfere;
//! callers measure a region with [`reset`] followed by [`snapshot`].

use serde::{Deserialize, Serialize};
use std::cell::Cell;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Counters {
    /// Complete from-scratch concept enumerations.
    pub full_enumerations: u64,
    /// Concepts produced by complete enumerations.
    pub concepts_enumerated: u64,
    /// Derivation operator applications (either direction).
    pub derivations: u64,
    /// Bit-vector subset tests.
    pub subset_tests: u64,
}

thread_local! {
    static COUNTERS: Cell<Counters> = Cell::new(Counters::default());
}

fn update(f: impl FnOnce(&mut Counters)) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub fn reset() {
    COUNTERS.with(|c| c.set(Counters::default()));
}

pub fn snapshot() -> Counters {
    COUNTERS.with(|c| c.get())
}

pub(crate) fn bump_full_enumeration(concepts: u64) {
    update(|c| {
        c.full_enumerations += 1;
        c.concepts_enumerated += concepts;
    });
}

pub(crate) fn bump_derivations() {
    update(|c| c.derivations += 1);
}

pub(crate) fn bump_subset_tests() {
    update(|c| c.subset_tests += 1);
}
