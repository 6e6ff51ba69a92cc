//! Diagram JSON and Graphviz export, and replay of change sets on documents.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::changeset::{ChangeSet, Direction, LabelKind, PostClass, PreClass};
use crate::concept::{Concept, ConceptId};
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::layout::{self, SeedMap, Vec2};
use crate::sets;
use crate::state::{Adjacency, ChangeClass, DiagramState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Node {
    pub id: ConceptId,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub pos: Vec2,
    pub object_labels: Vec<String>,
    pub attribute_labels: Vec<String>,
    pub change_class: Option<ChangeClass>,
}

/// Serializable form of a [`DiagramState`].
///
/// Besides the drawing itself it records the object and attribute order and
/// the id counter, so a document can be turned back into a state and edited.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramDocument {
    pub version: u64,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub nodes: Vec<Node>,
    /// `[lowerId, upperId]`
    pub edges: Vec<(ConceptId, ConceptId)>,
    pub seeds: SeedMap,
    pub up_arrows: Vec<(String, String)>,
    pub down_arrows: Vec<(String, String)>,
    #[serde(default)]
    pub next_id: u32,
}

impl DiagramDocument {
    pub fn from_state(state: &DiagramState) -> Self {
        let context = state.context();
        let nodes = state
            .concepts()
            .map(|c| Node {
                id: c.id,
                extent: context.object_names(&c.extent),
                intent: context.attribute_names(&c.intent),
                pos: state.position(c.id).expect("every concept has a position"),
                object_labels: state
                    .object_labels(c.id)
                    .into_iter()
                    .map(|g| context.objects()[g].clone())
                    .collect(),
                attribute_labels: state
                    .attribute_labels(c.id)
                    .into_iter()
                    .map(|m| context.attributes()[m].clone())
                    .collect(),
                change_class: state.last_change(c.id),
            })
            .collect();
        let names = |pairs: &BTreeSet<(usize, usize)>| {
            pairs
                .iter()
                .map(|&(g, m)| (context.objects()[g].clone(), context.attributes()[m].clone()))
                .collect()
        };
        Self {
            version: state.version(),
            objects: context.objects().to_vec(),
            attributes: context.attributes().to_vec(),
            nodes,
            edges: state.edges().into_iter().collect(),
            seeds: state.seeds().clone(),
            up_arrows: names(state.up_arrows()),
            down_arrows: names(state.down_arrows()),
            next_id: state.next_id(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// Rebuilds the editable state, validating that the document describes a
    /// consistent lattice of its own context.
    pub fn to_state(&self) -> Result<DiagramState> {
        let invalid = |msg: String| Error::InvalidDocument(msg);
        let objects = self.objects.clone();
        let attributes = self.attributes.clone();
        let object_index: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let attribute_index: HashMap<&str, usize> =
            attributes.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let object_set = |names: &[String]| -> Result<_> {
            let mut set = sets::empty(objects.len());
            for name in names {
                set.insert(
                    *object_index
                        .get(name.as_str())
                        .ok_or_else(|| Error::object_not_found(name))?,
                );
            }
            Ok(set)
        };
        let attribute_set = |names: &[String]| -> Result<_> {
            let mut set = sets::empty(attributes.len());
            for name in names {
                set.insert(
                    *attribute_index
                        .get(name.as_str())
                        .ok_or_else(|| Error::attribute_not_found(name))?,
                );
            }
            Ok(set)
        };

        let mut gamma: Vec<Option<ConceptId>> = vec![None; objects.len()];
        let mut mu: Vec<Option<ConceptId>> = vec![None; attributes.len()];
        let mut rows = vec![sets::empty(attributes.len()); objects.len()];
        let mut concepts = BTreeMap::new();
        let mut positions = BTreeMap::new();
        let mut last_change = BTreeMap::new();
        for node in &self.nodes {
            let concept = Concept {
                id: node.id,
                extent: object_set(&node.extent)?,
                intent: attribute_set(&node.intent)?,
            };
            for name in &node.object_labels {
                let g = object_index[name.as_str()];
                if gamma[g].replace(node.id).is_some() {
                    return Err(invalid(format!("object `{name}` labels two nodes")));
                }
                rows[g] = concept.intent.clone();
            }
            for name in &node.attribute_labels {
                let m = *attribute_index
                    .get(name.as_str())
                    .ok_or_else(|| Error::attribute_not_found(name))?;
                if mu[m].replace(node.id).is_some() {
                    return Err(invalid(format!("attribute `{name}` labels two nodes")));
                }
            }
            positions.insert(node.id, node.pos);
            if let Some(class) = node.change_class {
                last_change.insert(node.id, class);
            }
            if concepts.insert(node.id, concept).is_some() {
                return Err(invalid(format!("duplicate node id {}", node.id)));
            }
        }
        let unlabeled = |labels: &[Option<ConceptId>], names: &[String]| {
            labels.iter().position(Option::is_none).map(|i| names[i].clone())
        };
        if let Some(name) = unlabeled(&gamma, &objects) {
            return Err(invalid(format!("object `{name}` labels no node")));
        }
        if let Some(name) = unlabeled(&mu, &attributes) {
            return Err(invalid(format!("attribute `{name}` labels no node")));
        }

        let context = FormalContext::from_rows(objects, attributes, rows)?;
        for c in concepts.values() {
            if context.derive_objects(&c.intent) != c.extent || context.derive_attributes(&c.extent) != c.intent {
                return Err(invalid(format!("node {} is not a concept of the context", c.id)));
            }
        }

        let mut upper: Adjacency = concepts.keys().map(|&id| (id, BTreeSet::new())).collect();
        let mut lower: Adjacency = upper.clone();
        for &(lo, up) in &self.edges {
            if !concepts.contains_key(&lo) || !concepts.contains_key(&up) {
                return Err(invalid(format!("edge ({lo}, {up}) references a missing node")));
            }
            upper.get_mut(&lo).unwrap().insert(up);
            lower.get_mut(&up).unwrap().insert(lo);
        }

        let mut irreducibles = sets::empty(context.attribute_count());
        for name in self.seeds.keys() {
            irreducibles.insert(
                context
                    .attribute_index(name)
                    .ok_or_else(|| invalid(format!("seed for unknown attribute `{name}`")))?,
            );
        }
        let arrows = |pairs: &[(String, String)]| -> Result<BTreeSet<(usize, usize)>> {
            pairs
                .iter()
                .map(|(g, m)| {
                    Ok((
                        context.object_index(g).ok_or_else(|| Error::object_not_found(g))?,
                        context
                            .attribute_index(m)
                            .ok_or_else(|| Error::attribute_not_found(m))?,
                    ))
                })
                .collect()
        };
        let up_arrows = arrows(&self.up_arrows)?;
        let down_arrows = arrows(&self.down_arrows)?;

        let max_id = concepts.keys().next_back().map_or(0, |id| id.0 + 1);
        Ok(DiagramState {
            by_extent: concepts.values().map(|c| (c.extent.clone(), c.id)).collect(),
            concepts,
            upper,
            lower,
            gamma: gamma.into_iter().map(Option::unwrap).collect(),
            mu: mu.into_iter().map(Option::unwrap).collect(),
            irreducibles,
            seeds: self.seeds.clone(),
            positions,
            up_arrows,
            down_arrows,
            last_change,
            version: self.version,
            next_id: self.next_id.max(max_id),
            context,
        })
    }

    /// Replays `changeset` on this document, as a client holding the
    /// previous document would. The result equals the server's document for
    /// the new version.
    pub fn apply(&self, changeset: &ChangeSet) -> Result<DiagramDocument> {
        let column = &changeset.column.name;
        let mut attributes = self.attributes.clone();
        match changeset.direction {
            Direction::Insert => attributes.push(column.clone()),
            Direction::Remove => attributes.retain(|a| a != column),
        }
        let object_rank: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let attribute_rank: HashMap<String, usize> =
            attributes.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        let previous: BTreeMap<ConceptId, &Node> = self.nodes.iter().map(|n| (n.id, n)).collect();
        let mut nodes: BTreeMap<ConceptId, Node> = self.nodes.iter().map(|n| (n.id, n.clone())).collect();

        for record in &changeset.retired {
            nodes.remove(&record.id);
        }
        for id in changeset.varied() {
            if let Some(node) = nodes.get_mut(&id) {
                match changeset.direction {
                    Direction::Insert => node.intent.push(column.clone()),
                    Direction::Remove => node.intent.retain(|a| a != column),
                }
            }
        }
        let mut origin: BTreeMap<ConceptId, ConceptId> = BTreeMap::new();
        for record in &changeset.created {
            origin.insert(record.id, record.generator);
            nodes.insert(
                record.id,
                Node {
                    id: record.id,
                    extent: record.extent.clone(),
                    intent: record.intent.clone(),
                    pos: Vec2::ZERO,
                    object_labels: Vec::new(),
                    attribute_labels: Vec::new(),
                    change_class: None,
                },
            );
        }

        for mv in &changeset.label_moves {
            if let Some(from) = mv.from.and_then(|id| nodes.get_mut(&id)) {
                let labels = match mv.kind {
                    LabelKind::Object => &mut from.object_labels,
                    LabelKind::Attribute => &mut from.attribute_labels,
                };
                labels.retain(|l| l != &mv.name);
            }
            if let Some(to) = mv.to {
                let node = nodes
                    .get_mut(&to)
                    .ok_or_else(|| Error::InvalidDocument(format!("label target {to} missing")))?;
                match mv.kind {
                    LabelKind::Object => node.object_labels.push(mv.name.clone()),
                    LabelKind::Attribute => node.attribute_labels.push(mv.name.clone()),
                }
            }
        }

        let mut seeds = self.seeds.clone();
        for name in changeset.seeds_removed.keys() {
            seeds.remove(name);
        }
        seeds.extend(changeset.seeds_added.clone());

        for node in nodes.values_mut() {
            let source = origin.get(&node.id).copied().unwrap_or(node.id);
            let before = previous
                .get(&source)
                .ok_or_else(|| Error::InvalidDocument(format!("node {source} missing from previous document")))?;
            let old_intent: BTreeSet<&str> = before.intent.iter().map(String::as_str).collect();
            let new_intent: BTreeSet<&str> = node.intent.iter().map(String::as_str).collect();
            node.pos = layout::shift_position(
                before.pos,
                &changeset.seeds_removed,
                |m| old_intent.contains(m),
                &changeset.seeds_added,
                |m| new_intent.contains(m),
            );
            node.change_class = match changeset.direction {
                Direction::Insert => changeset.post_class.get(&node.id).map(|c| match c {
                    PostClass::Old => ChangeClass::Old,
                    PostClass::Varied => ChangeClass::Varied,
                    PostClass::Generated => ChangeClass::Generated,
                }),
                Direction::Remove => changeset.pre_class.get(&node.id).map(|c| match c {
                    PreClass::Varying => ChangeClass::Varied,
                    _ => ChangeClass::Old,
                }),
            };
            node.intent.sort_by_key(|m| attribute_rank[m]);
            node.object_labels.sort_by_key(|g| object_rank[g.as_str()]);
            node.attribute_labels.sort_by_key(|m| attribute_rank[m]);
        }

        let mut edges: BTreeSet<(ConceptId, ConceptId)> = self.edges.iter().copied().collect();
        for e in &changeset.edges_removed {
            edges.remove(e);
        }
        edges.retain(|(lo, up)| nodes.contains_key(lo) && nodes.contains_key(up));
        edges.extend(changeset.edges_added.iter().copied());

        let replay_arrows =
            |current: &[(String, String)], added: &BTreeSet<(String, String)>, removed: &BTreeSet<(String, String)>| {
                let mut set: BTreeSet<(String, String)> = current
                    .iter()
                    .filter(|p| !removed.contains(*p) && attribute_rank.contains_key(&p.1))
                    .cloned()
                    .collect();
                set.extend(added.iter().cloned());
                let mut out: Vec<(String, String)> = set.into_iter().collect();
                out.sort_by_key(|(g, m)| (object_rank[g.as_str()], attribute_rank[m]));
                out
            };

        let next_id = changeset
            .created
            .iter()
            .map(|r| r.id.0 + 1)
            .fold(self.next_id, u32::max);
        Ok(DiagramDocument {
            version: changeset.version_after,
            objects: self.objects.clone(),
            up_arrows: replay_arrows(
                &self.up_arrows,
                &changeset.up_arrows_added,
                &changeset.up_arrows_removed,
            ),
            down_arrows: replay_arrows(
                &self.down_arrows,
                &changeset.down_arrows_added,
                &changeset.down_arrows_removed,
            ),
            attributes,
            nodes: nodes.into_values().collect(),
            edges: edges.into_iter().collect(),
            seeds,
            next_id,
        })
    }
}

pub fn export_json(state: &DiagramState) -> String {
    DiagramDocument::from_state(state).to_json()
}

/// Graphviz digraph with one node per concept and edges from lower to upper
/// neighbors. Attribute labels are listed above object labels.
pub fn export_dot(state: &DiagramState) -> String {
    let context = state.context();
    let escape = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in state.concepts() {
        let attrs: Vec<String> = state
            .attribute_labels(c.id)
            .into_iter()
            .map(|m| escape(&context.attributes()[m]))
            .collect();
        let objs: Vec<String> = state
            .object_labels(c.id)
            .into_iter()
            .map(|g| escape(&context.objects()[g]))
            .collect();
        let pos = state.position(c.id).unwrap_or_default();
        out.push_str(&format!(
            "  c{} [label=\"{}\\n{}\", pos=\"{},{}\"];\n",
            c.id,
            attrs.join(", "),
            objs.join(", "),
            pos.x,
            pos.y
        ));
    }
    for (lo, up) in state.edges() {
        out.push_str(&format!("  c{lo} -> c{up};\n"));
    }
    out.push_str("}\n");
    out
}
