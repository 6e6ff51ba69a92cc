//! Up- and down-arrow updates.
//!
//! Pairs are `(object, attribute)` indices. Insertion results are in the
//! indices of the widened context (old attributes keep their index, the
//! column is last); removal results are in the indices of the context that
//! still contains the column unless stated otherwise.

use std::collections::{BTreeMap, BTreeSet};

use crate::changeset::PostClass;
use crate::concept::ConceptId;
use crate::context::{AttributeColumn, FormalContext};
use crate::sets::{self, ObjectSet};
use crate::state::DiagramState;

pub type Pairs = BTreeSet<(usize, usize)>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArrowDelta {
    pub added: Pairs,
    pub removed: Pairs,
}

/// `g ↙ m` by definition: `g` lacks `m` and every object with a strictly
/// larger intent has `m`.
pub fn down_arrow_holds(context: &FormalContext, g: usize, m: usize) -> bool {
    if context.incident(g, m) {
        return false;
    }
    let intent = context.object_intent(g);
    (0..context.object_count())
        .all(|h| context.incident(h, m) || !sets::is_proper_subset(intent, context.object_intent(h)))
}

/// Objects outside the column extent (`G1`) and attributes whose extent is
/// a proper subset of it (`M2`), for the attributes `0..attribute_limit`
/// other than `skip`.
fn blocks(context: &FormalContext, column: &ObjectSet, skip: Option<usize>) -> (Vec<usize>, Vec<usize>) {
    let outside = (0..context.object_count()).filter(|&g| !column.contains(g)).collect();
    let strictly_inside = (0..context.attribute_count())
        .filter(|&m| Some(m) != skip && sets::is_proper_subset(context.attribute_extent(m), column))
        .collect();
    (outside, strictly_inside)
}

/// Insertion: the `G1 × M2` block is deleted and the new column is filled
/// in from its definition; everything else is unchanged.
pub fn update_up_arrows_insert(state: &DiagramState, column: &AttributeColumn) -> ArrowDelta {
    let context = &state.context;
    let n = context.attribute_count();
    let (outside, strictly_inside) = blocks(context, &column.extent, None);
    let mut delta = ArrowDelta::default();
    for &(g, m) in &state.up_arrows {
        if !column.extent.contains(g) && strictly_inside.contains(&m) {
            delta.removed.insert((g, m));
        }
    }
    let mut above = context.all_objects();
    for k in 0..n {
        let extent = context.attribute_extent(k);
        if sets::is_proper_subset(&column.extent, extent) {
            above.intersect_with(extent);
        }
    }
    for g in outside {
        if above.contains(g) {
            delta.added.insert((g, n));
        }
    }
    delta
}

/// Removal of column `n` from `state`. The `n` column is dropped and the
/// `G1 × M2` block is rebuilt from the classified lattice:
///
/// - an attribute that becomes irreducible (with old upper neighbor `b`)
///   gets arrows from the objects of `b`;
/// - an irreducible attribute whose unique upper neighbor was generated
///   gets arrows from the objects in the generator whose object concept is old.
pub fn update_up_arrows_remove(
    state: &DiagramState,
    n: usize,
    class: &BTreeMap<ConceptId, PostClass>,
    generator_of: &BTreeMap<ConceptId, ConceptId>,
    becoming_irreducible: &BTreeMap<usize, ConceptId>,
) -> ArrowDelta {
    let context = &state.context;
    let column = context.attribute_extent(n);
    let (outside, strictly_inside) = blocks(context, column, Some(n));
    let mut delta = ArrowDelta::default();
    for &(g, m) in &state.up_arrows {
        if m == n || (!column.contains(g) && strictly_inside.contains(&m)) {
            delta.removed.insert((g, m));
        }
    }
    for &m in &strictly_inside {
        if !state.irreducibles.contains(m) {
            if let Some(old) = becoming_irreducible.get(&m) {
                let extent = &state.concepts[old].extent;
                delta
                    .added
                    .extend(outside.iter().filter(|&&g| extent.contains(g)).map(|&g| (g, m)));
            }
            continue;
        }
        let cover = state.upper[&state.mu[m]]
            .first()
            .copied()
            .expect("irreducible attribute concept has an upper neighbor");
        let Some(generator) = generator_of.get(&cover) else {
            continue;
        };
        let extent = &state.concepts[generator].extent;
        delta.added.extend(
            outside
                .iter()
                .filter(|&&g| extent.contains(g) && class[&state.gamma[g]] == PostClass::Old)
                .map(|&g| (g, m)),
        );
    }
    // pairs present both before and after are not changes
    let unchanged: Vec<_> = delta.added.intersection(&delta.removed).copied().collect();
    for pair in unchanged {
        delta.added.remove(&pair);
        delta.removed.remove(&pair);
    }
    delta
}

/// Insertion. A row of `↙` stays as it is when the sufficient condition for
/// its object holds; otherwise the row is rebuilt by definition in the
/// widened context. Objects outside the column can only lose arrows, objects
/// inside it can also gain some (their strictly larger intents may drop out).
/// The new column is filled in from its definition.
pub fn update_down_arrows_insert(
    state: &DiagramState,
    widened: &FormalContext,
    column: &AttributeColumn,
) -> ArrowDelta {
    let context = &state.context;
    let n = context.attribute_count();
    let mut delta = ArrowDelta::default();
    for g in 0..context.object_count() {
        if sufficient_to_keep(context, &column.extent, g) {
            continue;
        }
        for m in 0..n {
            let before = state.down_arrows.contains(&(g, m));
            let after = down_arrow_holds(widened, g, m);
            if before && !after {
                delta.removed.insert((g, m));
            } else if after && !before {
                delta.added.insert((g, m));
            }
        }
    }
    for g in (0..context.object_count()).filter(|&g| !column.extent.contains(g)) {
        if down_arrow_holds(widened, g, n) {
            delta.added.insert((g, n));
        }
    }
    delta
}

/// For `g` outside the column: no object with the same intent is inside it.
/// For `g` inside: every object with a strictly larger intent is inside it.
/// Either way the objects strictly above `g` are the same with and without
/// the column.
fn sufficient_to_keep(context: &FormalContext, column: &ObjectSet, g: usize) -> bool {
    let intent = context.object_intent(g);
    if column.contains(g) {
        (0..context.object_count())
            .all(|h| column.contains(h) || !sets::is_proper_subset(intent, context.object_intent(h)))
    } else {
        (0..context.object_count()).all(|h| !column.contains(h) || context.object_intent(h) != intent)
    }
}

/// Removal of column `n`. Rows whose object passes [`sufficient_to_keep`]
/// in the narrowed context are unchanged apart from dropping the column;
/// the others are rebuilt by definition. Added pairs are in `narrowed`
/// indices; removed pairs are in `state` indices and include every arrow on
/// the column itself.
pub fn update_down_arrows_remove(state: &DiagramState, narrowed: &FormalContext, n: usize) -> ArrowDelta {
    let column = state.context.attribute_extent(n);
    let mut delta = ArrowDelta {
        removed: state.down_arrows.iter().filter(|(_, m)| *m == n).copied().collect(),
        ..ArrowDelta::default()
    };
    let unshift = |m: usize| if m >= n { m + 1 } else { m };
    for g in 0..narrowed.object_count() {
        if sufficient_to_keep(narrowed, column, g) {
            continue;
        }
        for m in 0..narrowed.attribute_count() {
            let before = state.down_arrows.contains(&(g, unshift(m)));
            let after = down_arrow_holds(narrowed, g, m);
            if before && !after {
                delta.removed.insert((g, unshift(m)));
            } else if after && !before {
                delta.added.insert((g, m));
            }
        }
    }
    delta
}
