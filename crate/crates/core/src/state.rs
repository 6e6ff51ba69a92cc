//! The maintained diagram: lattice, labels, reducibility, seeds, positions
//! and arrows of one formal context.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::concept::{Concept, ConceptId};
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::layout::{self, SeedMap, Vec2};
use crate::oracle::LatticeSnapshot;
use crate::sets::{AttributeSet, ObjectSet};

/// How a concept was affected by the most recent update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeClass {
    Old,
    Varied,
    Generated,
}

pub type Adjacency = BTreeMap<ConceptId, BTreeSet<ConceptId>>;

#[derive(Debug, Clone)]
pub struct DiagramState {
    pub(crate) context: FormalContext,
    pub(crate) concepts: BTreeMap<ConceptId, Concept>,
    pub(crate) by_extent: HashMap<ObjectSet, ConceptId>,
    pub(crate) upper: Adjacency,
    pub(crate) lower: Adjacency,
    pub(crate) gamma: Vec<ConceptId>,
    pub(crate) mu: Vec<ConceptId>,
    pub(crate) irreducibles: AttributeSet,
    pub(crate) seeds: SeedMap,
    pub(crate) positions: BTreeMap<ConceptId, Vec2>,
    pub(crate) up_arrows: BTreeSet<(usize, usize)>,
    pub(crate) down_arrows: BTreeSet<(usize, usize)>,
    pub(crate) last_change: BTreeMap<ConceptId, ChangeClass>,
    pub(crate) version: u64,
    pub(crate) next_id: u32,
}

impl DiagramState {
    /// Computes the whole diagram from scratch and assigns default seeds.
    pub fn build(context: FormalContext) -> Self {
        let snapshot = LatticeSnapshot::compute(&context);
        Self::from_snapshot(context, snapshot)
    }

    pub fn from_snapshot(context: FormalContext, snapshot: LatticeSnapshot) -> Self {
        let next_id = snapshot.concepts.len() as u32;
        let mut upper = Adjacency::new();
        let mut lower = Adjacency::new();
        for c in &snapshot.concepts {
            upper.insert(c.id, snapshot.upper[c.id.0 as usize].clone());
            lower.insert(c.id, snapshot.lower[c.id.0 as usize].clone());
        }
        let concepts: BTreeMap<ConceptId, Concept> = snapshot.concepts.into_iter().map(|c| (c.id, c)).collect();
        let mut state = Self {
            by_extent: concepts.values().map(|c| (c.extent.clone(), c.id)).collect(),
            context,
            concepts,
            upper,
            lower,
            gamma: snapshot.gamma,
            mu: snapshot.mu,
            irreducibles: snapshot.irreducibles,
            seeds: SeedMap::new(),
            positions: BTreeMap::new(),
            up_arrows: snapshot.up_arrows,
            down_arrows: snapshot.down_arrows,
            last_change: BTreeMap::new(),
            version: 0,
            next_id,
        };
        let count = state.irreducibles.count_ones(..);
        state.seeds = state
            .irreducibles
            .ones()
            .enumerate()
            .map(|(rank, m)| (state.context.attributes()[m].clone(), layout::default_seed(rank, count)))
            .collect();
        state.recompute_positions();
        state
    }

    pub(crate) fn recompute_positions(&mut self) {
        self.positions = self
            .concepts
            .keys()
            .map(|&id| (id, layout::position(self, id).expect("seeds cover irreducibles")))
            .collect();
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concept(&self, id: ConceptId) -> Option<&Concept> {
        self.concepts.get(&id)
    }

    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.values()
    }

    pub fn concept_count(&self) -> usize {
        self.concepts.len()
    }

    pub fn concept_by_extent(&self, extent: &ObjectSet) -> Option<ConceptId> {
        self.by_extent.get(extent).copied()
    }

    pub fn upper(&self, id: ConceptId) -> &BTreeSet<ConceptId> {
        &self.upper[&id]
    }

    pub fn lower(&self, id: ConceptId) -> &BTreeSet<ConceptId> {
        &self.lower[&id]
    }

    /// All covering pairs `(lower, upper)`.
    pub fn edges(&self) -> BTreeSet<(ConceptId, ConceptId)> {
        self.upper
            .iter()
            .flat_map(|(&lo, ups)| ups.iter().map(move |&up| (lo, up)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.upper.values().map(BTreeSet::len).sum()
    }

    /// `γ(g)` by object index.
    pub fn object_concept(&self, object: usize) -> ConceptId {
        self.gamma[object]
    }

    /// `μ(m)` by attribute index.
    pub fn attribute_concept(&self, attribute: usize) -> ConceptId {
        self.mu[attribute]
    }

    pub fn object_labels(&self, id: ConceptId) -> Vec<usize> {
        (0..self.gamma.len()).filter(|&g| self.gamma[g] == id).collect()
    }

    pub fn attribute_labels(&self, id: ConceptId) -> Vec<usize> {
        (0..self.mu.len()).filter(|&m| self.mu[m] == id).collect()
    }

    pub fn irreducibles(&self) -> &AttributeSet {
        &self.irreducibles
    }

    pub fn seeds(&self) -> &SeedMap {
        &self.seeds
    }

    /// Incrementally maintained position of a concept.
    pub fn position(&self, id: ConceptId) -> Option<Vec2> {
        self.positions.get(&id).copied()
    }

    pub fn up_arrows(&self) -> &BTreeSet<(usize, usize)> {
        &self.up_arrows
    }

    pub fn down_arrows(&self) -> &BTreeSet<(usize, usize)> {
        &self.down_arrows
    }

    pub fn last_change(&self, id: ConceptId) -> Option<ChangeClass> {
        self.last_change.get(&id).copied()
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub(crate) fn fresh_id(&mut self) -> ConceptId {
        let id = ConceptId(self.next_id);
        self.next_id += 1;
        id
    }

    /// Replaces the seed of an irreducible attribute and shifts every
    /// concept whose intent contains it.
    pub fn set_seed(&self, attribute: &str, seed: Vec2) -> Result<DiagramState> {
        let m = self
            .context
            .attribute_index(attribute)
            .ok_or_else(|| Error::attribute_not_found(attribute))?;
        if !self.irreducibles.contains(m) {
            return Err(Error::Reducible(attribute.to_owned()));
        }
        if !seed.is_finite() {
            return Err(Error::Inconsistent(format!("non-finite seed for `{attribute}`")));
        }
        let mut next = self.clone();
        let old = next.seeds.insert(attribute.to_owned(), seed).unwrap_or_default();
        let delta = seed - old;
        for concept in next.concepts.values() {
            if concept.intent.contains(m) {
                *next.positions.get_mut(&concept.id).expect("position present") += delta;
            }
        }
        next.version += 1;
        next.last_change.clear();
        Ok(next)
    }

    /// Default seed for an attribute that has none yet.
    pub fn assign_default_seed(&self, attribute: usize) -> Result<Vec2> {
        layout::assign_default_seed(self, attribute)
    }

    /// Structural equality: same context, concepts (with ids), edges, labels,
    /// irreducibles, seeds, positions and arrows. Version, id counter and
    /// last-change marks are ignored.
    pub fn same_diagram(&self, other: &DiagramState) -> bool {
        self.context == other.context
            && self.concepts == other.concepts
            && self.upper == other.upper
            && self.lower == other.lower
            && self.gamma == other.gamma
            && self.mu == other.mu
            && self.irreducibles == other.irreducibles
            && self.seeds == other.seeds
            && self.positions == other.positions
            && self.up_arrows == other.up_arrows
            && self.down_arrows == other.down_arrows
    }
}
