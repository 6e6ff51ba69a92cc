//! The exact delta produced by one column insertion or removal.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::concept::ConceptId;
use crate::layout::SeedMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Insert,
    Remove,
}

/// Classification of a concept of the context without the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreClass {
    /// Extent is not contained in the column extent.
    Old,
    /// Extent is contained in the column extent.
    Varying,
    /// Old, and its intent is already the derivation of its extent cut down
    /// to the column extent; spawns one new concept.
    Generating,
}

impl PreClass {
    pub fn is_old(self) -> bool {
        matches!(self, PreClass::Old | PreClass::Generating)
    }
}

/// Classification of a concept of the context with the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PostClass {
    Old,
    Varied,
    Generated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    pub name: String,
    pub extent: Vec<String>,
}

/// A concept that appears (insert) or disappears (remove), together with the
/// generator concept it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptRecord {
    pub id: ConceptId,
    pub generator: ConceptId,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    Object,
    Attribute,
}

/// A label relocation; `from`/`to` are `None` when the label is created or deleted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabelMove {
    pub kind: LabelKind,
    pub name: String,
    pub from: Option<ConceptId>,
    pub to: Option<ConceptId>,
}

pub type NamePairs = BTreeSet<(String, String)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChangeSet {
    pub direction: Direction,
    pub column: ColumnRecord,
    /// No concept was created or retired.
    pub redundant: bool,
    pub version_before: u64,
    pub version_after: u64,
    /// Classes of the concepts of the context without the column.
    pub pre_class: BTreeMap<ConceptId, PreClass>,
    /// Classes of the concepts of the context with the column.
    pub post_class: BTreeMap<ConceptId, PostClass>,
    pub created: Vec<ConceptRecord>,
    pub retired: Vec<ConceptRecord>,
    /// Covering pairs as `(lower, upper)`.
    pub edges_added: BTreeSet<(ConceptId, ConceptId)>,
    pub edges_removed: BTreeSet<(ConceptId, ConceptId)>,
    pub label_moves: Vec<LabelMove>,
    pub seeds_added: SeedMap,
    pub seeds_removed: SeedMap,
    pub up_arrows_added: NamePairs,
    pub up_arrows_removed: NamePairs,
    pub down_arrows_added: NamePairs,
    pub down_arrows_removed: NamePairs,
}

impl ChangeSet {
    /// Generator id to created (insert) or retired (remove) concept id.
    pub fn generator_map(&self) -> BTreeMap<ConceptId, ConceptId> {
        let records = match self.direction {
            Direction::Insert => &self.created,
            Direction::Remove => &self.retired,
        };
        records.iter().map(|r| (r.generator, r.id)).collect()
    }

    /// Concepts whose intent gains (insert) or loses (remove) the column.
    pub fn varied(&self) -> impl Iterator<Item = ConceptId> + '_ {
        self.post_class
            .iter()
            .filter(|(_, c)| **c == PostClass::Varied)
            .map(|(id, _)| *id)
    }

    /// The delta that undoes this one.
    pub fn inverse(&self) -> ChangeSet {
        ChangeSet {
            direction: match self.direction {
                Direction::Insert => Direction::Remove,
                Direction::Remove => Direction::Insert,
            },
            column: self.column.clone(),
            redundant: self.redundant,
            version_before: self.version_after,
            version_after: self.version_after + 1,
            pre_class: self.pre_class.clone(),
            post_class: self.post_class.clone(),
            created: self.retired.clone(),
            retired: self.created.clone(),
            edges_added: self.edges_removed.clone(),
            edges_removed: self.edges_added.clone(),
            label_moves: self
                .label_moves
                .iter()
                .map(|m| LabelMove {
                    kind: m.kind,
                    name: m.name.clone(),
                    from: m.to,
                    to: m.from,
                })
                .collect(),
            seeds_added: self.seeds_removed.clone(),
            seeds_removed: self.seeds_added.clone(),
            up_arrows_added: self.up_arrows_removed.clone(),
            up_arrows_removed: self.up_arrows_added.clone(),
            down_arrows_added: self.down_arrows_removed.clone(),
            down_arrows_removed: self.down_arrows_added.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("changeset serializes")
    }
}
