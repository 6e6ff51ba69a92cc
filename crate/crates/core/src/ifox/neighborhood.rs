//! Covering-relation updates.
//!
//! Edges between two old concepts, and between two varying/varied concepts,
//! never change. Insertion only has to find the lower neighbors of the new
//! concepts and drop the varying→generator edges; removal deletes the edges
//! of the retired concepts and reconnects varying concepts to generators.

use std::collections::{BTreeMap, BTreeSet};

use crate::changeset::{PostClass, PreClass};
use crate::concept::{Concept, ConceptId};
use crate::state::DiagramState;

pub type Edge = (ConceptId, ConceptId);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeDelta {
    pub added: BTreeSet<Edge>,
    pub removed: BTreeSet<Edge>,
}

/// Edge changes for inserting a column into `state`.
///
/// `generated` maps each generating concept to the id of its new concept.
/// The new concept below generator `b` covers exactly the maximal
/// generating-or-varying concepts strictly below `b` (through their images),
/// which is the "nothing of those classes in between" condition for both
/// generator/generator and varying/generator pairs; a varying concept can
/// never lie above a generating one.
pub fn update_neighborhood_insert(
    state: &DiagramState,
    class: &BTreeMap<ConceptId, PreClass>,
    generated: &BTreeMap<ConceptId, ConceptId>,
) -> EdgeDelta {
    let mut delta = EdgeDelta::default();

    for (&lo, ups) in &state.upper {
        if class[&lo] != PreClass::Varying {
            continue;
        }
        for &up in ups {
            if class[&up] == PreClass::Generating {
                delta.removed.insert((lo, up));
            }
        }
    }

    let movable: Vec<&Concept> = state
        .concepts
        .values()
        .filter(|c| matches!(class[&c.id], PreClass::Generating | PreClass::Varying))
        .collect();

    for (&b, &new_b) in generated {
        delta.added.insert((new_b, b));
        let generator = &state.concepts[&b];
        let mut below: Vec<&Concept> = movable.iter().copied().filter(|c| c.is_below(generator)).collect();
        below.sort_by_key(|c| std::cmp::Reverse(c.extent.count_ones(..)));
        let mut maximal: Vec<&Concept> = Vec::new();
        for c in below {
            if !maximal.iter().any(|m| c.is_below(m)) {
                maximal.push(c);
            }
        }
        for a in maximal {
            let image = generated.get(&a.id).copied().unwrap_or(a.id);
            delta.added.insert((image, new_b));
        }
    }
    delta
}

/// Edge changes for removing the column from `state`.
///
/// `generator_of` maps each generated concept to its generator. A varied
/// concept `a` covered by a generated `b` becomes a lower neighbor of the
/// generator of `b` iff no really old concept (old and not a generator)
/// lies strictly between them.
pub fn update_neighborhood_remove(
    state: &DiagramState,
    class: &BTreeMap<ConceptId, PostClass>,
    generator_of: &BTreeMap<ConceptId, ConceptId>,
) -> EdgeDelta {
    let mut delta = EdgeDelta::default();
    for (&lo, ups) in &state.upper {
        for &up in ups {
            if class[&lo] == PostClass::Generated || class[&up] == PostClass::Generated {
                delta.removed.insert((lo, up));
            }
        }
    }

    let generators: BTreeSet<ConceptId> = generator_of.values().copied().collect();
    let really_old: Vec<&Concept> = state
        .concepts
        .values()
        .filter(|c| class[&c.id] == PostClass::Old && !generators.contains(&c.id))
        .collect();

    for (&a, ups) in &state.upper {
        if class[&a] != PostClass::Varied {
            continue;
        }
        let varied = &state.concepts[&a];
        for up in ups {
            let Some(&g) = generator_of.get(up) else {
                continue;
            };
            let generator = &state.concepts[&g];
            let blocked = really_old.iter().any(|c| varied.is_below(c) && c.is_below(generator));
            if !blocked {
                delta.added.insert((a, g));
            }
        }
    }
    delta
}
