//! Incremental column insertion and removal.
//!
//! Both directions classify the concepts first, then derive every other
//! change from the classes in a fixed order: concepts, edges, labels,
//! reducibility and seeds, arrows. Old and varying/varied concepts keep their
//! ids; generated concepts get fresh ones.

pub mod arrows;
pub mod classify;
pub mod labels;
pub mod neighborhood;
pub mod reducibility;

use std::collections::{BTreeMap, BTreeSet};

use crate::changeset::{
    ChangeSet, ColumnRecord, ConceptRecord, Direction, LabelKind, LabelMove, NamePairs, PostClass, PreClass,
};
use crate::concept::{Concept, ConceptId};
use crate::context::{AttributeColumn, FormalContext};
use crate::error::{Error, Result};
use crate::layout::{self, SeedMap, Vec2};
use crate::sets;
use crate::state::{ChangeClass, DiagramState};

pub use self::neighborhood::EdgeDelta;

impl DiagramState {
    /// Inserts `column` as the last attribute; the new attribute gets a
    /// default seed if it is irreducible.
    pub fn insert_column(&self, column: AttributeColumn) -> Result<(DiagramState, ChangeSet)> {
        self.insert_column_seeded(column, None)
    }

    /// As [`insert_column`](Self::insert_column), using `seed` for the new
    /// attribute when it turns out irreducible.
    pub fn insert_column_seeded(
        &self,
        column: AttributeColumn,
        seed: Option<Vec2>,
    ) -> Result<(DiagramState, ChangeSet)> {
        let widened = self.context.apposition(&column)?;
        let n = self.context.attribute_count();

        let pre_class = classify::classify_all_pre(&self.context, &column, self.concepts.values());
        let mut next = self.clone();
        next.context = widened;

        let mut generated = BTreeMap::new();
        for (&id, &class) in &pre_class {
            if class == PreClass::Generating {
                generated.insert(id, next.fresh_id());
            }
        }

        let edges = neighborhood::update_neighborhood_insert(self, &pre_class, &generated);
        let labels = labels::update_labels_insert(self, &column, &pre_class, &generated)?;
        let becoming_reducible = reducibility::reducible_after_insert(self, &pre_class);
        let up = arrows::update_up_arrows_insert(self, &column);
        let down = arrows::update_down_arrows_insert(self, &next.context, &column);

        // concepts
        for concept in next.concepts.values_mut() {
            concept.intent = sets::with_appended(&concept.intent, pre_class[&concept.id] == PreClass::Varying);
        }
        let mut created = Vec::with_capacity(generated.len());
        for (&generator, &id) in &generated {
            let source = &self.concepts[&generator];
            let concept = Concept {
                id,
                extent: sets::intersection(&source.extent, &column.extent),
                intent: sets::with_appended(&source.intent, true),
            };
            created.push(ConceptRecord {
                id,
                generator,
                extent: next.context.object_names(&concept.extent),
                intent: next.context.attribute_names(&concept.intent),
            });
            next.by_extent.insert(concept.extent.clone(), id);
            next.upper.insert(id, BTreeSet::new());
            next.lower.insert(id, BTreeSet::new());
            next.concepts.insert(id, concept);
        }
        apply_edges(&mut next, &edges);

        // labels
        for &(g, _, to) in &labels.object_moves {
            next.gamma[g] = to;
        }
        next.mu.push(labels.column_concept);

        // reducibility and seeds
        let column_irreducible = next.upper[&labels.column_concept].len() == 1;
        next.irreducibles = sets::with_appended(&self.irreducibles, column_irreducible);
        let mut seeds_removed = SeedMap::new();
        for &m in &becoming_reducible {
            next.irreducibles.set(m, false);
            let name = &self.context.attributes()[m];
            seeds_removed.insert(name.clone(), next.seeds.remove(name).expect("irreducible has a seed"));
        }
        let mut seeds_added = SeedMap::new();
        if column_irreducible {
            let seed = match seed {
                Some(s) => s,
                None => layout::assign_default_seed(&next, n)?,
            };
            seeds_added.insert(column.name.clone(), seed);
            next.seeds.insert(column.name.clone(), seed);
        }

        // positions
        let removed_idx = seed_indices(&self.context, &seeds_removed);
        let added_idx = seed_indices(&next.context, &seeds_added);
        let generator_of: BTreeMap<ConceptId, ConceptId> = generated.iter().map(|(&g, &id)| (id, g)).collect();
        for concept in next.concepts.values() {
            let (start, old_intent) = match generator_of.get(&concept.id) {
                Some(generator) => (self.positions[generator], &self.concepts[generator].intent),
                None => (self.positions[&concept.id], &self.concepts[&concept.id].intent),
            };
            let pos = shift(
                start,
                &removed_idx,
                |m| old_intent.contains(m),
                &added_idx,
                |m| concept.intent.contains(m),
            );
            next.positions.insert(concept.id, pos);
        }

        // arrows
        for pair in &up.removed {
            next.up_arrows.remove(pair);
        }
        next.up_arrows.extend(up.added.iter().copied());
        for pair in &down.removed {
            next.down_arrows.remove(pair);
        }
        next.down_arrows.extend(down.added.iter().copied());

        let mut post_class = BTreeMap::new();
        for (&id, &class) in &pre_class {
            post_class.insert(
                id,
                if class == PreClass::Varying {
                    PostClass::Varied
                } else {
                    PostClass::Old
                },
            );
        }
        for &id in generated.values() {
            post_class.insert(id, PostClass::Generated);
        }
        next.last_change = post_class.iter().map(|(&id, &c)| (id, change_class(c))).collect();
        next.version = self.version + 1;

        let mut label_moves: Vec<LabelMove> = labels
            .object_moves
            .iter()
            .map(|&(g, from, to)| LabelMove {
                kind: LabelKind::Object,
                name: self.context.objects()[g].clone(),
                from: Some(from),
                to: Some(to),
            })
            .collect();
        label_moves.push(LabelMove {
            kind: LabelKind::Attribute,
            name: column.name.clone(),
            from: None,
            to: Some(labels.column_concept),
        });

        let (up_added, up_removed) = arrow_name_delta(
            arrow_names(&self.context, &self.up_arrows),
            arrow_names(&next.context, &next.up_arrows),
        );
        let (down_added, down_removed) = arrow_name_delta(
            arrow_names(&self.context, &self.down_arrows),
            arrow_names(&next.context, &next.down_arrows),
        );

        let changeset = ChangeSet {
            direction: Direction::Insert,
            column: ColumnRecord {
                name: column.name.clone(),
                extent: self.context.object_names(&column.extent),
            },
            redundant: generated.is_empty(),
            version_before: self.version,
            version_after: next.version,
            pre_class,
            post_class,
            created,
            retired: Vec::new(),
            edges_added: edges.added,
            edges_removed: edges.removed,
            label_moves,
            seeds_added,
            seeds_removed,
            up_arrows_added: up_added,
            up_arrows_removed: up_removed,
            down_arrows_added: down_added,
            down_arrows_removed: down_removed,
        };
        Ok((next, changeset))
    }

    /// Removes the named attribute column; the remaining attributes keep
    /// their order. Attributes that become irreducible get default seeds.
    pub fn remove_column(&self, name: &str) -> Result<(DiagramState, ChangeSet)> {
        let n = self.context.attribute_index(name).ok_or_else(|| Error::NotFound {
            kind: "attribute",
            name: name.to_owned(),
        })?;
        let (narrowed, column) = self.context.split_column(name)?;

        let post_class = classify::classify_all_post(&self.context, n, self.concepts.values());
        let mut generator_of = BTreeMap::new();
        for (&id, &class) in &post_class {
            if class != PostClass::Generated {
                continue;
            }
            let (extent, _) = classify::generator_preimage(&narrowed, n, &self.concepts[&id]);
            let generator = self
                .concept_by_extent(&extent)
                .ok_or_else(|| Error::Inconsistent(format!("generated concept {id} has no generator")))?;
            if post_class[&generator] != PostClass::Old {
                return Err(Error::Inconsistent(format!("generator {generator} of {id} is not old")));
            }
            generator_of.insert(id, generator);
        }

        let edges = neighborhood::update_neighborhood_remove(self, &post_class, &generator_of);
        let object_moves = labels::update_labels_remove(self, &generator_of);
        let becoming_irreducible = reducibility::irreducible_after_remove(self, n, &post_class, &generator_of);
        let up = arrows::update_up_arrows_remove(self, n, &post_class, &generator_of, &becoming_irreducible);
        let down = arrows::update_down_arrows_remove(self, &narrowed, n);

        let shift_index = |m: usize| if m > n { m - 1 } else { m };
        let mut next = self.clone();
        next.context = narrowed;

        // concepts
        let mut retired = Vec::with_capacity(generator_of.len());
        for (&id, &generator) in &generator_of {
            let concept = next.concepts.remove(&id).expect("generated concept present");
            next.by_extent.remove(&concept.extent);
            next.upper.remove(&id);
            next.lower.remove(&id);
            next.positions.remove(&id);
            retired.push(ConceptRecord {
                id,
                generator,
                extent: self.context.object_names(&concept.extent),
                intent: self.context.attribute_names(&concept.intent),
            });
        }
        for concept in next.concepts.values_mut() {
            concept.intent = sets::without_index(&concept.intent, n);
        }
        for ups in next.upper.values_mut() {
            ups.retain(|u| !generator_of.contains_key(u));
        }
        for lows in next.lower.values_mut() {
            lows.retain(|l| !generator_of.contains_key(l));
        }
        apply_edges(
            &mut next,
            &EdgeDelta {
                added: edges.added.clone(),
                removed: BTreeSet::new(),
            },
        );

        // labels
        for &(g, _, to) in &object_moves {
            next.gamma[g] = to;
        }
        let column_concept = next.mu.remove(n);

        // reducibility and seeds
        next.irreducibles = sets::without_index(&self.irreducibles, n);
        for &m in becoming_irreducible.keys() {
            next.irreducibles.insert(shift_index(m));
        }
        let mut seeds_removed = SeedMap::new();
        if let Some(seed) = next.seeds.remove(name) {
            seeds_removed.insert(name.to_owned(), seed);
        }
        let mut seeds_added = SeedMap::new();
        for &m in becoming_irreducible.keys() {
            let seed = layout::assign_default_seed(&next, shift_index(m))?;
            seeds_added.insert(self.context.attributes()[m].clone(), seed);
        }
        next.seeds.extend(seeds_added.clone());

        // positions
        let removed_idx = seed_indices(&self.context, &seeds_removed);
        let added_idx = seed_indices(&next.context, &seeds_added);
        for concept in next.concepts.values() {
            let old_intent = &self.concepts[&concept.id].intent;
            let pos = shift(
                self.positions[&concept.id],
                &removed_idx,
                |m| old_intent.contains(m),
                &added_idx,
                |m| concept.intent.contains(m),
            );
            next.positions.insert(concept.id, pos);
        }

        // arrows
        next.up_arrows = self
            .up_arrows
            .iter()
            .filter(|p| !up.removed.contains(p))
            .chain(up.added.iter())
            .map(|&(g, m)| (g, shift_index(m)))
            .collect();
        next.down_arrows = self
            .down_arrows
            .iter()
            .filter(|p| !down.removed.contains(p))
            .map(|&(g, m)| (g, shift_index(m)))
            .chain(down.added.iter().copied())
            .collect();

        let generators: BTreeSet<ConceptId> = generator_of.values().copied().collect();
        let pre_class: BTreeMap<ConceptId, PreClass> = next
            .concepts
            .keys()
            .map(|id| {
                let class = match post_class[id] {
                    PostClass::Varied => PreClass::Varying,
                    _ if generators.contains(id) => PreClass::Generating,
                    _ => PreClass::Old,
                };
                (*id, class)
            })
            .collect();
        next.last_change = pre_class
            .iter()
            .map(|(&id, &c)| {
                let class = if c == PreClass::Varying {
                    ChangeClass::Varied
                } else {
                    ChangeClass::Old
                };
                (id, class)
            })
            .collect();
        next.version = self.version + 1;

        let mut label_moves: Vec<LabelMove> = object_moves
            .iter()
            .map(|&(g, from, to)| LabelMove {
                kind: LabelKind::Object,
                name: self.context.objects()[g].clone(),
                from: Some(from),
                to: Some(to),
            })
            .collect();
        label_moves.push(LabelMove {
            kind: LabelKind::Attribute,
            name: name.to_owned(),
            from: Some(column_concept),
            to: None,
        });

        let (up_added, up_removed) = arrow_name_delta(
            arrow_names(&self.context, &self.up_arrows),
            arrow_names(&next.context, &next.up_arrows),
        );
        let (down_added, down_removed) = arrow_name_delta(
            arrow_names(&self.context, &self.down_arrows),
            arrow_names(&next.context, &next.down_arrows),
        );

        let changeset = ChangeSet {
            direction: Direction::Remove,
            column: ColumnRecord {
                name: name.to_owned(),
                extent: next.context.object_names(&column.extent),
            },
            redundant: generator_of.is_empty(),
            version_before: self.version,
            version_after: next.version,
            pre_class,
            post_class,
            created: Vec::new(),
            retired,
            edges_added: edges.added,
            edges_removed: edges.removed,
            label_moves,
            seeds_added,
            seeds_removed,
            up_arrows_added: up_added,
            up_arrows_removed: up_removed,
            down_arrows_added: down_added,
            down_arrows_removed: down_removed,
        };
        Ok((next, changeset))
    }
}

fn apply_edges(state: &mut DiagramState, delta: &EdgeDelta) {
    for &(lo, up) in &delta.removed {
        if let Some(ups) = state.upper.get_mut(&lo) {
            ups.remove(&up);
        }
        if let Some(lows) = state.lower.get_mut(&up) {
            lows.remove(&lo);
        }
    }
    for &(lo, up) in &delta.added {
        state.upper.get_mut(&lo).expect("lower end exists").insert(up);
        state.lower.get_mut(&up).expect("upper end exists").insert(lo);
    }
}

fn change_class(class: PostClass) -> ChangeClass {
    match class {
        PostClass::Old => ChangeClass::Old,
        PostClass::Varied => ChangeClass::Varied,
        PostClass::Generated => ChangeClass::Generated,
    }
}

fn seed_indices(context: &FormalContext, seeds: &SeedMap) -> Vec<(usize, Vec2)> {
    seeds
        .iter()
        .map(|(name, v)| (context.attribute_index(name).expect("seeded attribute exists"), *v))
        .collect()
}

/// Index-based counterpart of [`layout::shift_position`]; iterates in the
/// same (name) order so both produce identical floating-point results.
fn shift(
    start: Vec2,
    removed: &[(usize, Vec2)],
    in_old: impl Fn(usize) -> bool,
    added: &[(usize, Vec2)],
    in_new: impl Fn(usize) -> bool,
) -> Vec2 {
    let mut out = start;
    for &(m, v) in removed {
        if in_old(m) {
            out -= v;
        }
    }
    for &(m, v) in added {
        if in_new(m) {
            out += v;
        }
    }
    out
}

pub(crate) fn arrow_names(context: &FormalContext, pairs: &BTreeSet<(usize, usize)>) -> NamePairs {
    pairs
        .iter()
        .map(|&(g, m)| (context.objects()[g].clone(), context.attributes()[m].clone()))
        .collect()
}

fn arrow_name_delta(before: NamePairs, after: NamePairs) -> (NamePairs, NamePairs) {
    let added = after.difference(&before).cloned().collect();
    let removed = before.difference(&after).cloned().collect();
    (added, removed)
}
