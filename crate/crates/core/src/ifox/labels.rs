//! Object and attribute label updates.

use std::collections::BTreeMap;

use crate::changeset::PreClass;
use crate::concept::ConceptId;
use crate::context::AttributeColumn;
use crate::error::{Error, Result};
use crate::sets;
use crate::state::DiagramState;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelUpdate {
    /// `(object, from, to)`
    pub object_moves: Vec<(usize, ConceptId, ConceptId)>,
    /// Concept that carries the column's attribute label after insertion.
    pub column_concept: ConceptId,
    /// The greatest generator, when the column is irredundant.
    pub greatest_generator: Option<ConceptId>,
}

/// Label changes for inserting `column` into `state`.
///
/// Only objects labelling a generator and having the new attribute move,
/// down to the generated concept. The new attribute labels the concept
/// generated by the greatest generator, or the varied concept whose extent
/// is the column extent when the column is redundant.
pub fn update_labels_insert(
    state: &DiagramState,
    column: &AttributeColumn,
    class: &BTreeMap<ConceptId, PreClass>,
    generated: &BTreeMap<ConceptId, ConceptId>,
) -> Result<LabelUpdate> {
    let object_moves = state
        .gamma
        .iter()
        .enumerate()
        .filter_map(|(g, &b)| {
            let new = generated.get(&b)?;
            column.extent.contains(g).then_some((g, b, *new))
        })
        .collect();

    if generated.is_empty() {
        let id = state
            .concept_by_extent(&column.extent)
            .ok_or_else(|| Error::Inconsistent("redundant column extent is not a concept extent".into()))?;
        if class[&id] != PreClass::Varying {
            return Err(Error::Inconsistent(format!(
                "concept {id} with the column extent is not varying"
            )));
        }
        return Ok(LabelUpdate {
            object_moves,
            column_concept: id,
            greatest_generator: None,
        });
    }

    let tau = generated
        .keys()
        .map(|id| &state.concepts[id])
        .max_by_key(|c| c.extent.count_ones(..))
        .expect("non-empty generator set");
    let closure_intent = state.context.derive_attributes(&column.extent);
    let closure_extent = state.context.derive_objects(&closure_intent);
    if tau.extent != closure_extent || tau.intent != closure_intent {
        return Err(Error::Inconsistent(format!(
            "greatest generator {} differs from the closure of the column extent",
            tau.id
        )));
    }
    if let Some(stray) = generated
        .keys()
        .find(|id| !sets::is_subset(&state.concepts[id].extent, &tau.extent))
    {
        return Err(Error::Inconsistent(format!(
            "generator {stray} is not below the greatest generator {}",
            tau.id
        )));
    }
    Ok(LabelUpdate {
        object_moves,
        column_concept: generated[&tau.id],
        greatest_generator: Some(tau.id),
    })
}

/// Object label changes for removing the column: labels of each retired
/// concept merge into its generator.
pub fn update_labels_remove(
    state: &DiagramState,
    generator_of: &BTreeMap<ConceptId, ConceptId>,
) -> Vec<(usize, ConceptId, ConceptId)> {
    state
        .gamma
        .iter()
        .enumerate()
        .filter_map(|(g, id)| generator_of.get(id).map(|gen| (g, *id, *gen)))
        .collect()
}
