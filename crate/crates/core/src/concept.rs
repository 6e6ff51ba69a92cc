use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sets::{AttributeSet, ObjectSet};

/// Stable concept identifier. Never reused within one diagram's lifetime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptId(pub u32);

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A formal concept `(A, B)` with `A = B^I` and `B = A^I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub id: ConceptId,
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

impl Concept {
    /// Strict concept order: `self < other` iff the extent is a proper subset.
    pub fn is_below(&self, other: &Concept) -> bool {
        crate::sets::is_proper_subset(&self.extent, &other.extent)
    }
}
