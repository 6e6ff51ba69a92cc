//! Random edit traces replayed incrementally and by full rebuild, with
//! timings and instrumentation counters for both.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::context::{AttributeColumn, FormalContext};
use crate::error::Result;
use crate::metrics::{self, Counters};
use crate::oracle::LatticeSnapshot;
use crate::random;
use crate::state::DiagramState;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", content = "column", rename_all = "lowercase")]
pub enum Edit {
    Insert(String),
    Remove(String),
}

#[derive(Debug, Clone)]
pub struct EditTrace {
    pub context: FormalContext,
    /// Columns in the order they are inserted; removals refer to them by name.
    pub columns: Vec<AttributeColumn>,
    pub edits: Vec<Edit>,
}

/// Cross density of the random contexts and columns in traces.
pub const TRACE_DENSITY: f64 = 0.2;

/// A `objects × attributes` random context followed by `ops` edits. With
/// `removals` every third edit removes a random attribute present at that
/// point; otherwise every edit inserts a fresh column.
pub fn random_trace(seed: u64, objects: usize, attributes: usize, ops: usize, removals: bool) -> EditTrace {
    let mut rng = random::rng(seed);
    let context = random::random_context(&mut rng, objects, attributes, TRACE_DENSITY);
    let mut present: Vec<String> = context.attributes().to_vec();
    let mut columns = Vec::new();
    let mut edits = Vec::with_capacity(ops);
    for i in 0..ops {
        if removals && i % 3 == 2 && !present.is_empty() {
            let name = present.remove(rng.gen_range(0..present.len()));
            edits.push(Edit::Remove(name));
        } else {
            let name = format!("e{i}");
            let density = rng.gen_range(TRACE_DENSITY / 2.0..TRACE_DENSITY * 2.0);
            columns.push(random::random_column(&mut rng, &context, &name, density));
            present.push(name.clone());
            edits.push(Edit::Insert(name));
        }
    }
    EditTrace {
        context,
        columns,
        edits,
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PathReport {
    pub total_micros: u128,
    pub op_micros: Vec<u128>,
    pub counters: Counters,
    pub final_concepts: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceReport {
    pub objects: usize,
    pub attributes: usize,
    pub ops: usize,
    pub edits: Vec<Edit>,
    pub incremental: PathReport,
    pub rebuild: PathReport,
}

/// Replays the trace with `insert_column`/`remove_column`. The initial build
/// is not measured.
pub fn run_incremental(trace: &EditTrace) -> Result<PathReport> {
    let mut state = DiagramState::build(trace.context.clone());
    let mut columns = trace.columns.iter();
    metrics::reset();
    let start = Instant::now();
    let mut op_micros = Vec::with_capacity(trace.edits.len());
    for edit in &trace.edits {
        let op_start = Instant::now();
        state = match edit {
            Edit::Insert(_) => {
                state
                    .insert_column(columns.next().expect("column per insert").clone())?
                    .0
            }
            Edit::Remove(name) => state.remove_column(name)?.0,
        };
        op_micros.push(op_start.elapsed().as_micros());
    }
    Ok(PathReport {
        total_micros: start.elapsed().as_micros(),
        op_micros,
        counters: metrics::snapshot(),
        final_concepts: state.concept_count(),
    })
}

/// Replays the trace on the context alone and recomputes the whole lattice
/// after every edit.
pub fn run_rebuild(trace: &EditTrace) -> Result<PathReport> {
    let mut context = trace.context.clone();
    let mut columns = trace.columns.iter();
    let mut concepts = 0;
    metrics::reset();
    let start = Instant::now();
    let mut op_micros = Vec::with_capacity(trace.edits.len());
    for edit in &trace.edits {
        let op_start = Instant::now();
        context = match edit {
            Edit::Insert(_) => context.apposition(columns.next().expect("column per insert"))?,
            Edit::Remove(name) => context.split_column(name)?.0,
        };
        concepts = LatticeSnapshot::compute(&context).concepts.len();
        op_micros.push(op_start.elapsed().as_micros());
    }
    Ok(PathReport {
        total_micros: start.elapsed().as_micros(),
        op_micros,
        counters: metrics::snapshot(),
        final_concepts: concepts,
    })
}

pub fn compare(trace: &EditTrace) -> Result<TraceReport> {
    Ok(TraceReport {
        objects: trace.context.object_count(),
        attributes: trace.context.attribute_count(),
        ops: trace.edits.len(),
        edits: trace.edits.clone(),
        incremental: run_incremental(trace)?,
        rebuild: run_rebuild(trace)?,
    })
}
