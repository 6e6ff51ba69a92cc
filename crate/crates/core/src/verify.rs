//! Checking maintained diagrams against the oracle, randomized trials and
//! counterexample minimization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::changeset::{ChangeSet, PreClass};
use crate::context::{AttributeColumn, FormalContext};
use crate::cxt::write_cxt;
use crate::document::DiagramDocument;
use crate::layout;
use crate::oracle::{self, LatticeSnapshot};
use crate::random;
use crate::sets::{self, AttributeSet, ObjectSet};
use crate::state::DiagramState;

/// Column densities cycled through by the random trials.
pub const DENSITIES: [f64; 3] = [0.2, 0.4, 0.6];

const POSITION_TOLERANCE: f64 = 1e-9;

/// Differences between a maintained state and the from-scratch lattice of
/// its context. Concepts are matched by extent, so ids play no role.
pub fn compare_with_oracle(state: &DiagramState) -> Vec<String> {
    let context = state.context();
    let snapshot = LatticeSnapshot::compute(context);
    let mut problems = Vec::new();
    let names = |e: &ObjectSet| format!("{{{}}}", context.object_names(e).join(","));

    let expected: BTreeMap<Vec<usize>, &AttributeSet> = snapshot
        .concepts
        .iter()
        .map(|c| (c.extent.ones().collect(), &c.intent))
        .collect();
    let actual: BTreeMap<Vec<usize>, &AttributeSet> = state
        .concepts()
        .map(|c| (c.extent.ones().collect(), &c.intent))
        .collect();
    if actual.len() != state.concept_count() {
        problems.push("two concepts share an extent".to_owned());
    }
    for (extent, intent) in &expected {
        match actual.get(extent) {
            None => problems.push(format!("missing concept with extent {extent:?}")),
            Some(found) if found != intent => problems.push(format!(
                "concept with extent {extent:?} has intent {:?}, expected {:?}",
                context.attribute_names(found),
                context.attribute_names(intent)
            )),
            Some(_) => {}
        }
    }
    for extent in actual.keys().filter(|e| !expected.contains_key(*e)) {
        problems.push(format!("spurious concept with extent {extent:?}"));
    }

    let extent_of = |id| state.concept(id).map(|c| c.extent.clone());
    let actual_edges: BTreeSet<(ObjectSet, ObjectSet)> = state
        .edges()
        .into_iter()
        .filter_map(|(lo, up)| Some((extent_of(lo)?, extent_of(up)?)))
        .collect();
    let expected_edges: BTreeSet<(ObjectSet, ObjectSet)> = snapshot
        .upper
        .iter()
        .enumerate()
        .flat_map(|(lo, ups)| {
            let snapshot = &snapshot;
            ups.iter().map(move |up| {
                (
                    snapshot.concepts[lo].extent.clone(),
                    snapshot.concept(*up).extent.clone(),
                )
            })
        })
        .collect();
    for (lo, up) in expected_edges.difference(&actual_edges) {
        problems.push(format!("missing edge {} < {}", names(lo), names(up)));
    }
    for (lo, up) in actual_edges.difference(&expected_edges) {
        problems.push(format!("spurious edge {} < {}", names(lo), names(up)));
    }
    for (id, ups) in state.concepts().map(|c| (c.id, state.upper(c.id))) {
        for up in ups {
            if !state.lower(*up).contains(&id) {
                problems.push(format!("edge {id} < {up} missing from lower adjacency"));
            }
        }
    }

    for g in 0..context.object_count() {
        let found = extent_of(state.object_concept(g));
        if found.as_ref() != Some(&snapshot.concept(snapshot.gamma[g]).extent) {
            problems.push(format!("object `{}` labels the wrong concept", context.objects()[g]));
        }
    }
    for m in 0..context.attribute_count() {
        let found = extent_of(state.attribute_concept(m));
        if found.as_ref() != Some(&snapshot.concept(snapshot.mu[m]).extent) {
            problems.push(format!(
                "attribute `{}` labels the wrong concept",
                context.attributes()[m]
            ));
        }
    }
    if state.irreducibles() != &snapshot.irreducibles {
        problems.push(format!(
            "irreducibles {:?}, expected {:?}",
            context.attribute_names(state.irreducibles()),
            context.attribute_names(&snapshot.irreducibles)
        ));
    }
    let pair_names = |pairs: &BTreeSet<(usize, usize)>| -> Vec<String> {
        pairs
            .iter()
            .map(|&(g, m)| format!("({},{})", context.objects()[g], context.attributes()[m]))
            .collect()
    };
    if state.up_arrows() != &snapshot.up_arrows {
        problems.push(format!(
            "up arrows {:?}, expected {:?}",
            pair_names(state.up_arrows()),
            pair_names(&snapshot.up_arrows)
        ));
    }
    if state.down_arrows() != &snapshot.down_arrows {
        problems.push(format!(
            "down arrows {:?}, expected {:?}",
            pair_names(state.down_arrows()),
            pair_names(&snapshot.down_arrows)
        ));
    }
    problems
}

/// Internal consistency of a state that the oracle comparison does not see:
/// extent index, seed domain, positions and the id counter.
pub fn check_invariants(state: &DiagramState) -> Vec<String> {
    let mut problems = Vec::new();
    for c in state.concepts() {
        if state.concept_by_extent(&c.extent) != Some(c.id) {
            problems.push(format!("extent index out of date for concept {}", c.id));
        }
        if c.id.0 >= state.next_id() {
            problems.push(format!("concept id {} not below the id counter", c.id));
        }
        match (layout::position(state, c.id), state.position(c.id)) {
            (Ok(expected), Some(actual)) if expected.distance(actual) <= POSITION_TOLERANCE => {}
            (Ok(expected), Some(actual)) => {
                problems.push(format!("concept {} at {actual:?}, seed sum is {expected:?}", c.id))
            }
            (Err(e), _) => problems.push(e.to_string()),
            (_, None) => problems.push(format!("concept {} has no position", c.id)),
        }
    }
    let seeded: BTreeSet<&str> = state.seeds().keys().map(String::as_str).collect();
    let irreducible: BTreeSet<&str> = state
        .irreducibles()
        .ones()
        .map(|m| state.context().attributes()[m].as_str())
        .collect();
    if seeded != irreducible {
        problems.push(format!("seeds for {seeded:?}, irreducibles are {irreducible:?}"));
    }
    problems
}

/// Replays `changeset` on the document of `before` and compares with the
/// document of `after`.
pub fn check_replay(before: &DiagramState, changeset: &ChangeSet, after: &DiagramState) -> Vec<String> {
    match DiagramDocument::from_state(before).apply(changeset) {
        Ok(replayed) if replayed == DiagramDocument::from_state(after) => Vec::new(),
        Ok(_) => vec!["change set replay does not reproduce the document".to_owned()],
        Err(e) => vec![format!("change set replay failed: {e}")],
    }
}

/// Structural comparison matching concepts by extent: intents, edges,
/// labels, seeds and positions (within a small tolerance).
pub fn compare_by_extent(actual: &DiagramState, expected: &DiagramState) -> Vec<String> {
    fn summary(state: &DiagramState) -> BTreeMap<Vec<String>, (Vec<String>, layout::Vec2)> {
        let context = state.context();
        state
            .concepts()
            .map(|c| {
                let mut intent = context.attribute_names(&c.intent);
                intent.sort();
                let pos = state.position(c.id).unwrap_or_default();
                (context.object_names(&c.extent), (intent, pos))
            })
            .collect()
    }
    fn edges(state: &DiagramState) -> BTreeSet<(Vec<String>, Vec<String>)> {
        let names = |id| {
            state
                .context()
                .object_names(&state.concept(id).expect("edge end").extent)
        };
        state
            .edges()
            .into_iter()
            .map(|(lo, up)| (names(lo), names(up)))
            .collect()
    }
    let mut problems = Vec::new();
    let (a, e) = (summary(actual), summary(expected));
    if a.keys().ne(e.keys()) {
        problems.push("concept extents differ".to_owned());
    } else {
        for (extent, (intent, pos)) in &e {
            let (found_intent, found_pos) = &a[extent];
            if found_intent != intent {
                problems.push(format!("intent of {extent:?} is {found_intent:?}, expected {intent:?}"));
            }
            if found_pos.distance(*pos) > POSITION_TOLERANCE {
                problems.push(format!("{extent:?} at {found_pos:?}, expected {pos:?}"));
            }
        }
    }
    if edges(actual) != edges(expected) {
        problems.push("edges differ".to_owned());
    }
    if actual.seeds() != expected.seeds() {
        problems.push(format!("seeds {:?}, expected {:?}", actual.seeds(), expected.seeds()));
    }
    problems
}

/// Deliberate corruption applied to every engine result, for checking that
/// verification catches broken updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Forget one covering edge.
    DropEdge,
    /// Forget one up arrow.
    DropUpArrow,
}

impl Fault {
    pub fn parse(name: &str) -> Option<Fault> {
        match name {
            "drop-edge" => Some(Fault::DropEdge),
            "drop-up-arrow" => Some(Fault::DropUpArrow),
            _ => None,
        }
    }

    pub(crate) fn apply(self, state: &mut DiagramState) {
        match self {
            Fault::DropEdge => {
                if let Some((lo, up)) = state.edges().into_iter().next() {
                    state.upper.get_mut(&lo).expect("edge end").remove(&up);
                    state.lower.get_mut(&up).expect("edge end").remove(&lo);
                }
            }
            Fault::DropUpArrow => {
                if let Some(pair) = state.up_arrows.iter().next().copied() {
                    state.up_arrows.remove(&pair);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialKind {
    Insert,
    Remove,
}

impl fmt::Display for TrialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrialKind::Insert => "insert",
            TrialKind::Remove => "remove",
        })
    }
}

/// One edit checked end to end. The case is always a context `K` and a
/// column `C` over its objects: an insert trial inserts `C` into `K`, a
/// remove trial removes `C` from `K|C`.
pub fn check_case(
    kind: TrialKind,
    context: &FormalContext,
    column: &AttributeColumn,
    fault: Option<Fault>,
) -> Vec<String> {
    match kind {
        TrialKind::Insert => check_insert(context, column, fault),
        TrialKind::Remove => check_remove(context, column, fault),
    }
}

fn check_insert(context: &FormalContext, column: &AttributeColumn, fault: Option<Fault>) -> Vec<String> {
    let before = DiagramState::build(context.clone());
    let (clean, changeset) = match before.insert_column(column.clone()) {
        Ok(result) => result,
        Err(e) => return vec![format!("insert failed: {e}")],
    };
    let mut after = clean.clone();
    if let Some(fault) = fault {
        fault.apply(&mut after);
    }
    let mut problems = compare_with_oracle(&after);
    problems.extend(check_invariants(&after));
    problems.extend(check_replay(&before, &changeset, &after));

    let generators = changeset
        .pre_class
        .values()
        .filter(|c| **c == PreClass::Generating)
        .count();
    if changeset.created.len() != generators {
        problems.push(format!(
            "{} concepts created for {generators} generators",
            changeset.created.len()
        ));
    }
    if changeset.redundant != oracle::is_redundant_column(context, column) {
        problems.push(format!("redundancy flag is {}", changeset.redundant));
    }
    for record in &changeset.created {
        if !after.upper(record.id).contains(&record.generator) {
            problems.push(format!("created concept {} is not below its generator", record.id));
        }
    }

    match clean.remove_column(&column.name) {
        Ok((restored, _)) if restored.same_diagram(&before) => {}
        Ok((restored, _)) => {
            let mut diff = compare_by_extent(&restored, &before);
            if diff.is_empty() {
                diff.push("concept ids or labels differ".to_owned());
            }
            problems.extend(diff.into_iter().map(|d| format!("insert round trip: {d}")));
        }
        Err(e) => problems.push(format!("insert round trip: remove failed: {e}")),
    }
    problems
}

fn check_remove(context: &FormalContext, column: &AttributeColumn, fault: Option<Fault>) -> Vec<String> {
    let widened = match context.apposition(column) {
        Ok(widened) => widened,
        Err(e) => return vec![format!("apposition failed: {e}")],
    };
    let before = DiagramState::build(widened);
    let (clean, changeset) = match before.remove_column(&column.name) {
        Ok(result) => result,
        Err(e) => return vec![format!("remove failed: {e}")],
    };
    let mut after = clean.clone();
    if let Some(fault) = fault {
        fault.apply(&mut after);
    }
    let mut problems = compare_with_oracle(&after);
    problems.extend(check_invariants(&after));
    problems.extend(check_replay(&before, &changeset, &after));
    if changeset.redundant != oracle::is_redundant_column(context, column) {
        problems.push(format!("redundancy flag is {}", changeset.redundant));
    }

    let recorded = before.seeds().get(&column.name).copied();
    match clean.insert_column_seeded(column.clone(), recorded) {
        Ok((restored, _)) => problems.extend(
            compare_by_extent(&restored, &before)
                .into_iter()
                .map(|d| format!("remove round trip: {d}")),
        ),
        Err(e) => problems.push(format!("remove round trip: insert failed: {e}")),
    }
    problems
}

/// Settings for [`run_trials`].
#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub trials: usize,
    pub max_objects: usize,
    pub max_attributes: usize,
    pub seed: u64,
    /// Edit this context instead of generating one per trial.
    pub base: Option<FormalContext>,
    pub fault: Option<Fault>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            trials: 200,
            max_objects: 12,
            max_attributes: 10,
            seed: 0,
            base: None,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub kind: TrialKind,
    pub column: String,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub objects: usize,
    pub attributes: usize,
    pub density: f64,
    pub cases: Vec<CaseOutcome>,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.problems.is_empty())
    }
}

impl fmt::Display for TrialOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trial {:>4}  {:>2}x{:<2} density {:.1}",
            self.index, self.objects, self.attributes, self.density
        )?;
        for case in &self.cases {
            let verdict = if case.problems.is_empty() { "ok" } else { "FAIL" };
            write!(f, "  {} {} {}", case.kind, case.column, verdict)?;
        }
        Ok(())
    }
}

/// A failing case, shrunk as far as the failure allows.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub trial: usize,
    pub kind: TrialKind,
    pub context: FormalContext,
    pub column: AttributeColumn,
    pub problems: Vec<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample from trial {} ({}):", self.trial, self.kind)?;
        writeln!(f, "context:")?;
        write!(f, "{}", write_cxt(&self.context))?;
        writeln!(
            f,
            "column {} = {{{}}}",
            self.column.name,
            self.context.object_names(&self.column.extent).join(",")
        )?;
        for problem in &self.problems {
            writeln!(f, "  {problem}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub trials: Vec<TrialOutcome>,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(TrialOutcome::passed)
    }

    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.passed()).count()
    }
}

/// Runs `config.trials` randomized trials. Each trial inserts a fresh random
/// column into a context with fewer than `max_attributes` attributes and
/// removes a random column from the result, checking both against the
/// oracle and both round trips. Trial `i` depends only on the seed and `i`.
pub fn run_trials(config: &TrialConfig) -> VerifyReport {
    let start = Instant::now();
    let mut trials = Vec::with_capacity(config.trials);
    let mut counterexample = None;
    for index in 0..config.trials {
        let mut rng = random::rng(
            config
                .seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(index as u64),
        );
        let density = DENSITIES[index % DENSITIES.len()];
        let context = match &config.base {
            Some(base) => base.clone(),
            None => {
                let objects = rng.gen_range(1..=config.max_objects.max(1));
                let attributes = rng.gen_range(0..config.max_attributes.max(1));
                random::random_context(&mut rng, objects, attributes, density)
            }
        };
        let mut cases = Vec::new();

        let column = random::random_column(&mut rng, &context, &fresh_name(&context), density);
        cases.push(run_case(
            index,
            TrialKind::Insert,
            &context,
            &column,
            config.fault,
            &mut counterexample,
        ));

        let widened = context.apposition(&column).expect("fresh column fits");
        let name = widened.attributes().choose(&mut rng).expect("column present").clone();
        let (narrowed, removed) = widened.split_column(&name).expect("attribute exists");
        cases.push(run_case(
            index,
            TrialKind::Remove,
            &narrowed,
            &removed,
            config.fault,
            &mut counterexample,
        ));

        trials.push(TrialOutcome {
            index,
            objects: context.object_count(),
            attributes: context.attribute_count(),
            density,
            cases,
        });
    }
    VerifyReport {
        trials,
        counterexample,
        elapsed: start.elapsed(),
    }
}

fn run_case(
    trial: usize,
    kind: TrialKind,
    context: &FormalContext,
    column: &AttributeColumn,
    fault: Option<Fault>,
    counterexample: &mut Option<Counterexample>,
) -> CaseOutcome {
    let problems = check_case(kind, context, column, fault);
    if !problems.is_empty() && counterexample.is_none() {
        let (context, column, problems) = minimize(kind, context.clone(), column.clone(), fault);
        *counterexample = Some(Counterexample {
            trial,
            kind,
            context,
            column,
            problems,
        });
    }
    CaseOutcome {
        kind,
        column: column.name.clone(),
        problems,
    }
}

fn fresh_name(context: &FormalContext) -> String {
    (context.attribute_count()..)
        .map(|i| format!("m{i}"))
        .find(|name| context.attribute_index(name).is_none())
        .expect("some name is free")
}

/// Greedily drops objects, then attributes, then single crosses (including
/// column crosses) while the case keeps failing.
pub fn minimize(
    kind: TrialKind,
    mut context: FormalContext,
    mut column: AttributeColumn,
    fault: Option<Fault>,
) -> (FormalContext, AttributeColumn, Vec<String>) {
    let mut problems = check_case(kind, &context, &column, fault);
    assert!(!problems.is_empty(), "minimize needs a failing case");
    let mut attempt =
        |candidate: (FormalContext, AttributeColumn), context: &mut FormalContext, column: &mut AttributeColumn| {
            let found = check_case(kind, &candidate.0, &candidate.1, fault);
            if found.is_empty() {
                return false;
            }
            (*context, *column) = candidate;
            problems = found;
            true
        };

    let mut g = 0;
    while g < context.object_count() {
        if !attempt(drop_object(&context, &column, g), &mut context, &mut column) {
            g += 1;
        }
    }
    let mut m = 0;
    while m < context.attribute_count() {
        if !attempt((drop_attribute(&context, m), column.clone()), &mut context, &mut column) {
            m += 1;
        }
    }
    for g in 0..context.object_count() {
        for m in 0..context.attribute_count() {
            if context.incident(g, m) {
                let candidate = toggle_cross(&context, g, m);
                attempt((candidate, column.clone()), &mut context, &mut column);
            }
        }
        if column.extent.contains(g) {
            let mut extent = column.extent.clone();
            extent.set(g, false);
            let candidate = AttributeColumn::new(column.name.clone(), extent);
            attempt((context.clone(), candidate), &mut context, &mut column);
        }
    }
    (context, column, problems)
}

fn drop_object(context: &FormalContext, column: &AttributeColumn, g: usize) -> (FormalContext, AttributeColumn) {
    let keep = |i: usize| i != g;
    let objects = context
        .objects()
        .iter()
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .map(|(_, s)| s.clone())
        .collect();
    let rows = (0..context.object_count())
        .filter(|&i| keep(i))
        .map(|i| context.object_intent(i).clone())
        .collect();
    let narrowed = FormalContext::from_rows(objects, context.attributes().to_vec(), rows).expect("subcontext");
    let extent = sets::without_index(&column.extent, g);
    (narrowed, AttributeColumn::new(column.name.clone(), extent))
}

fn drop_attribute(context: &FormalContext, m: usize) -> FormalContext {
    let attributes = context
        .attributes()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != m)
        .map(|(_, s)| s.clone())
        .collect();
    let rows = (0..context.object_count())
        .map(|g| sets::without_index(context.object_intent(g), m))
        .collect();
    FormalContext::from_rows(context.objects().to_vec(), attributes, rows).expect("subcontext")
}

fn toggle_cross(context: &FormalContext, g: usize, m: usize) -> FormalContext {
    let rows = (0..context.object_count())
        .map(|i| {
            let mut row = context.object_intent(i).clone();
            if i == g {
                row.toggle(m);
            }
            row
        })
        .collect();
    FormalContext::from_rows(context.objects().to_vec(), context.attributes().to_vec(), rows).expect("same names")
}

/// Checks the apposition identities and the column-membership lemma on one
/// random sample `(A, B, g, m)` drawn for `K` and column `C`. Returns the
/// violated identities.
pub fn check_lemma_sample(rng: &mut impl Rng, context: &FormalContext, column: &AttributeColumn) -> Vec<String> {
    let mut problems = Vec::new();
    let widened = match context.apposition(column) {
        Ok(w) => w,
        Err(e) => return vec![e.to_string()],
    };
    let objects = context.object_count();
    let attributes = context.attribute_count();
    let n = attributes;
    let single = FormalContext::from_rows(
        context.objects().to_vec(),
        vec![column.name.clone()],
        (0..objects)
            .map(|g| sets::from_indices(1, column.extent.contains(g).then_some(0)))
            .collect(),
    )
    .expect("column context");
    let restrict = |b: &AttributeSet| sets::from_indices(attributes, b.ones().filter(|&m| m < n));

    if objects > 0 {
        let g = rng.gen_range(0..objects);
        let expected = sets::with_appended(context.object_intent(g), column.extent.contains(g));
        if widened.object_intent(g) != &expected {
            problems.push(format!("object intent of g{g} is not the disjoint union"));
        }
    }
    if attributes > 0 {
        let m = rng.gen_range(0..attributes);
        if widened.attribute_extent(m) != context.attribute_extent(m) {
            problems.push(format!("extent of attribute {m} changed"));
        }
    }
    if widened.attribute_extent(n) != &column.extent {
        problems.push("column extent changed".to_owned());
    }

    let a = sets::from_indices(objects, (0..objects).filter(|_| rng.gen_bool(0.5)));
    let b = sets::from_indices(attributes + 1, (0..=attributes).filter(|_| rng.gen_bool(0.3)));
    let a_widened = widened.derive_attributes(&a);
    if restrict(&a_widened) != context.derive_attributes(&a) {
        problems.push("A' restricted to M differs from A^I".to_owned());
    }
    let b_in_column = sets::from_indices(1, b.contains(n).then_some(0));
    let expected = sets::intersection(
        &context.derive_objects(&restrict(&b)),
        &single.derive_objects(&b_in_column),
    );
    if widened.derive_objects(&b) != expected {
        problems.push("B' differs from (B∩M)^I ∩ (B∩N)^J".to_owned());
    }
    let expected = sets::intersection(&context.closure_extent(&a), &single.closure_extent(&a));
    if widened.closure_extent(&a) != expected {
        problems.push("A'' differs from A^II ∩ A^JJ".to_owned());
    }

    let inside = sets::is_subset(&a, &column.extent);
    let a_column = single.derive_attributes(&a);
    if inside != (a_column == sets::full(1)) || (!inside && a_column.count_ones(..) != 0) {
        problems.push("A ⊆ n^J does not match A^J = {n}".to_owned());
    }
    let extent = widened.closure_extent(&a);
    let intent = widened.derive_attributes(&extent);
    if sets::is_subset(&extent, &column.extent) != intent.contains(n) {
        problems.push("concept extent inside the column does not match n in the intent".to_owned());
    }
    problems
}
