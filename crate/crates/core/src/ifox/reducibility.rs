//! Attribute reducibility updates.
//!
//! Reducible attributes stay reducible when a column is inserted, and
//! irreducible ones stay irreducible when it is removed; only the listed
//! configurations flip.

use std::collections::BTreeMap;

use crate::changeset::{PostClass, PreClass};
use crate::concept::ConceptId;
use crate::state::DiagramState;

/// Irreducible attributes of `state` that become reducible on insertion:
/// the attribute concept is varying, its unique upper neighbor is really
/// old, and some generator lies above that neighbor.
pub fn reducible_after_insert(state: &DiagramState, class: &BTreeMap<ConceptId, PreClass>) -> Vec<usize> {
    let generators: Vec<ConceptId> = class
        .iter()
        .filter(|(_, c)| **c == PreClass::Generating)
        .map(|(id, _)| *id)
        .collect();
    state
        .irreducibles
        .ones()
        .filter(|&m| {
            let concept = state.mu[m];
            if class[&concept] != PreClass::Varying {
                return false;
            }
            let ups = &state.upper[&concept];
            let [cover] = ups.iter().copied().collect::<Vec<_>>()[..] else {
                return false;
            };
            if class[&cover] != PreClass::Old {
                return false;
            }
            let cover = &state.concepts[&cover];
            generators.iter().any(|g| cover.is_below(&state.concepts[g]))
        })
        .collect()
}

/// Reducible attributes of `state` (other than the column `n`) that become
/// irreducible on removal, each with its single old upper neighbor.
///
/// The attribute concept must be varied with exactly one old upper
/// neighbor; every other upper neighbor must be generated from a
/// superconcept of that old one.
pub fn irreducible_after_remove(
    state: &DiagramState,
    n: usize,
    class: &BTreeMap<ConceptId, PostClass>,
    generator_of: &BTreeMap<ConceptId, ConceptId>,
) -> BTreeMap<usize, ConceptId> {
    let mut out = BTreeMap::new();
    for m in 0..state.context.attribute_count() {
        if m == n || state.irreducibles.contains(m) {
            continue;
        }
        let concept = state.mu[m];
        if class[&concept] != PostClass::Varied {
            continue;
        }
        let ups = &state.upper[&concept];
        let olds: Vec<ConceptId> = ups.iter().copied().filter(|u| class[u] == PostClass::Old).collect();
        let [old] = olds[..] else {
            continue;
        };
        let old_concept = &state.concepts[&old];
        let rest_ok = ups.iter().filter(|u| **u != old).all(|u| {
            class[u] == PostClass::Generated
                && crate::sets::is_subset(&old_concept.extent, &state.concepts[&generator_of[u]].extent)
        });
        if rest_ok {
            out.insert(m, old);
        }
    }
    out
}
