//! From-scratch computation of the whole concept diagram.
//!
//! Concepts come from lectic closure enumeration and the covering relation
//! from a pairwise order reduction; reducibility and arrows are read off
//! their definitions. Nothing here calls into [`crate::ifox`].

use std::collections::{BTreeSet, HashMap};

use crate::concept::{Concept, ConceptId};
use crate::context::{AttributeColumn, FormalContext};
use crate::error::{Error, Result};
use crate::metrics;
use crate::sets::{self, AttributeSet, ObjectSet};

/// `(object, attribute)` index pairs.
pub type IncidencePairs = BTreeSet<(usize, usize)>;

/// Everything the incremental engine maintains, computed in one batch.
#[derive(Debug, Clone)]
pub struct LatticeSnapshot {
    /// Concepts in enumeration order; `concepts[i].id == ConceptId(i)`.
    pub concepts: Vec<Concept>,
    pub upper: Vec<BTreeSet<ConceptId>>,
    pub lower: Vec<BTreeSet<ConceptId>>,
    /// Object concept per object index.
    pub gamma: Vec<ConceptId>,
    /// Attribute concept per attribute index.
    pub mu: Vec<ConceptId>,
    pub irreducibles: AttributeSet,
    pub up_arrows: IncidencePairs,
    pub down_arrows: IncidencePairs,
}

impl LatticeSnapshot {
    pub fn compute(context: &FormalContext) -> Self {
        let concepts = enumerate_concepts(context);
        let (upper, lower) = covering_relation(&concepts);
        let index: HashMap<&ObjectSet, ConceptId> = concepts.iter().map(|c| (&c.extent, c.id)).collect();
        let gamma = (0..context.object_count())
            .map(|g| {
                let extent = context.closure_extent(&sets::from_indices(context.object_count(), [g]));
                index[&extent]
            })
            .collect();
        let mu = (0..context.attribute_count())
            .map(|m| index[context.attribute_extent(m)])
            .collect();
        let (up_arrows, down_arrows) = arrows(context);
        Self {
            irreducibles: irreducible_attributes(context),
            concepts,
            upper,
            lower,
            gamma,
            mu,
            up_arrows,
            down_arrows,
        }
    }

    pub fn concept(&self, id: ConceptId) -> &Concept {
        &self.concepts[id.0 as usize]
    }
}

/// All concepts of `context`, in lectic order of their intents.
pub fn enumerate_concepts(context: &FormalContext) -> Vec<Concept> {
    let m_count = context.attribute_count();
    let mut out = Vec::new();
    let mut intent = context.closure_intent(&sets::empty(m_count));
    loop {
        out.push(Concept {
            id: ConceptId(out.len() as u32),
            extent: context.derive_objects(&intent),
            intent: intent.clone(),
        });
        match next_closure(context, &intent) {
            Some(next) => intent = next,
            None => break,
        }
    }
    metrics::bump_full_enumeration(out.len() as u64);
    out
}

/// The lectically next closed intent after `current`, if any.
fn next_closure(context: &FormalContext, current: &AttributeSet) -> Option<AttributeSet> {
    let m_count = context.attribute_count();
    for i in (0..m_count).rev() {
        if current.contains(i) {
            continue;
        }
        let mut candidate = sets::empty(m_count);
        candidate.extend(current.ones().take_while(|&m| m < i));
        candidate.insert(i);
        let closed = context.closure_intent(&candidate);
        // canonicity: the closure adds nothing below i
        let new_below_i = closed.ones().take_while(|&m| m < i).any(|m| !current.contains(m));
        if !new_below_i {
            return Some(closed);
        }
    }
    None
}

/// Upper and lower neighbor sets, indexed by position in `concepts`.
pub fn covering_relation(concepts: &[Concept]) -> (Vec<BTreeSet<ConceptId>>, Vec<BTreeSet<ConceptId>>) {
    let mut upper = vec![BTreeSet::new(); concepts.len()];
    let mut lower = vec![BTreeSet::new(); concepts.len()];
    for (i, c) in concepts.iter().enumerate() {
        let mut above: Vec<&Concept> = concepts.iter().filter(|d| c.is_below(d)).collect();
        above.sort_by_key(|d| d.extent.count_ones(..));
        let mut minimal: Vec<&Concept> = Vec::new();
        for d in above {
            if !minimal.iter().any(|e| e.is_below(d)) {
                minimal.push(d);
            }
        }
        for d in minimal {
            upper[i].insert(d.id);
            lower[d.id.0 as usize].insert(concepts[i].id);
        }
    }
    (upper, lower)
}

/// `γ(g) = (g^II, g^I)`
pub fn object_concept(context: &FormalContext, object: &str) -> Result<(ObjectSet, AttributeSet)> {
    let g = context
        .object_index(object)
        .ok_or_else(|| Error::object_not_found(object))?;
    let intent = context.object_intent(g).clone();
    Ok((context.derive_objects(&intent), intent))
}

/// `μ(m) = (m^I, m^II)`
pub fn attribute_concept(context: &FormalContext, attribute: &str) -> Result<(ObjectSet, AttributeSet)> {
    let m = context
        .attribute_index(attribute)
        .ok_or_else(|| Error::attribute_not_found(attribute))?;
    let extent = context.attribute_extent(m).clone();
    Ok((extent.clone(), context.derive_attributes(&extent)))
}

/// Attributes whose extent is not the intersection of the strictly larger
/// attribute extents (the empty intersection being `G`).
pub fn irreducible_attributes(context: &FormalContext) -> AttributeSet {
    let m_count = context.attribute_count();
    let mut out = sets::empty(m_count);
    for m in 0..m_count {
        let extent = context.attribute_extent(m);
        let mut meet = context.all_objects();
        for k in 0..m_count {
            let other = context.attribute_extent(k);
            if k != m && sets::is_proper_subset(extent, other) {
                meet.intersect_with(other);
            }
        }
        if meet != *extent {
            out.insert(m);
        }
    }
    out
}

/// Up and down arrows by scanning every non-incident pair.
///
/// `g ↙ m` iff `g` lacks `m` and every `h` with `g^I ⊊ h^I` has `m`;
/// `g ↗ m` iff `g` lacks `m` and `g` has every `k` with `m^I ⊊ k^I`.
pub fn arrows(context: &FormalContext) -> (IncidencePairs, IncidencePairs) {
    let mut up = BTreeSet::new();
    let mut down = BTreeSet::new();
    let g_count = context.object_count();
    let m_count = context.attribute_count();
    for g in 0..g_count {
        for m in 0..m_count {
            if context.incident(g, m) {
                continue;
            }
            let g_intent = context.object_intent(g);
            let is_down = (0..g_count)
                .all(|h| !sets::is_proper_subset(g_intent, context.object_intent(h)) || context.incident(h, m));
            if is_down {
                down.insert((g, m));
            }
            let m_extent = context.attribute_extent(m);
            let is_up = (0..m_count)
                .all(|k| !sets::is_proper_subset(m_extent, context.attribute_extent(k)) || context.incident(g, k));
            if is_up {
                up.insert((g, m));
            }
        }
    }
    (up, down)
}

/// Whether inserting `column` leaves the extent set unchanged, i.e. its
/// extent is already an extent of `context`.
pub fn is_redundant_column(context: &FormalContext, column: &AttributeColumn) -> bool {
    context.closure_extent(&column.extent) == column.extent
}
