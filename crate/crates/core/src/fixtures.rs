//! Small reference contexts used throughout the test suites.

use crate::context::{AttributeColumn, FormalContext};

/// `G = {g1, g2}`, `M = {a, b}`, `I = {(g1,a), (g1,b), (g2,b)}`.
pub fn k2() -> FormalContext {
    FormalContext::from_table(&["g1", "g2"], &["a", "b"], &["XX", ".X"]).unwrap()
}

/// Redundant column `c` with extent `{g1}`.
pub fn column_c() -> AttributeColumn {
    AttributeColumn::new("c", k2().object_set(&["g1"]).unwrap())
}

/// Irredundant column `d` with extent `{g2}`.
pub fn column_d() -> AttributeColumn {
    AttributeColumn::new("d", k2().object_set(&["g2"]).unwrap())
}

pub fn k2c() -> FormalContext {
    FormalContext::from_table(&["g1", "g2"], &["a", "b", "c"], &["XXX", ".X."]).unwrap()
}

pub fn k2d() -> FormalContext {
    FormalContext::from_table(&["g1", "g2"], &["a", "b", "d"], &["XX.", ".XX"]).unwrap()
}

/// `a^I = {1,2,3}`, `b^I = {1,2}`.
pub fn k4() -> FormalContext {
    FormalContext::from_table(&["1", "2", "3", "4"], &["a", "b"], &["XX", "XX", "X.", ".."]).unwrap()
}

/// Column `n` with extent `{1,2,4}`; makes `b` reducible.
pub fn column_k4_n() -> AttributeColumn {
    AttributeColumn::new("n", k4().object_set(&["1", "2", "4"]).unwrap())
}

pub const FREE_DISTRIBUTIVE_OBJECTS: [&str; 8] = ["x&y&z", "y&z", "x&z", "x&y", "z", "y", "x", "top"];
pub const FREE_DISTRIBUTIVE_ATTRIBUTES: [&str; 7] = ["x|y|z", "x|y", "x|z", "y|z", "x", "y", "z"];
const FREE_DISTRIBUTIVE_TABLE: [&str; 8] = [
    "XXXXXXX", "XXXX.XX", "XXXXX.X", "XXXXXX.", "X.XX..X", "XX.X.X.", "XXX.X..", ".......",
];

/// The seven-attribute cross table of the free distributive lattice on `x, y, z`
/// (incidence is the lattice order between the listed elements).
pub fn free_distributive_full() -> FormalContext {
    FormalContext::from_table(
        &FREE_DISTRIBUTIVE_OBJECTS,
        &FREE_DISTRIBUTIVE_ATTRIBUTES,
        &FREE_DISTRIBUTIVE_TABLE,
    )
    .unwrap()
}

/// The old context (first six attributes) and the `z` column to insert.
pub fn free_distributive() -> (FormalContext, AttributeColumn) {
    free_distributive_full().split_column("z").unwrap()
}
