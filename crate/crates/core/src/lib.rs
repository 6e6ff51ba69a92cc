//! Incremental maintenance of attribute-additive concept diagrams.
//!
//! A [`DiagramState`] holds the concept lattice of a formal context together
//! with its covering relation, labels, irreducible attributes, seed vectors,
//! positions and arrow relations. [`DiagramState::insert_column`] and
//! [`DiagramState::remove_column`] update all of it for a single attribute
//! column without recomputing the lattice, and report the exact delta as a
//! [`ChangeSet`]. The [`oracle`] module recomputes everything from scratch
//! and serves as the reference the engine is checked against.

pub mod changeset;
pub mod concept;
pub mod context;
pub mod cxt;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod ifox;
pub mod layout;
pub mod metrics;
pub mod oracle;
pub mod random;
pub mod sets;
pub mod state;
pub mod trace;
pub mod verify;

pub use changeset::{ChangeSet, Direction, PostClass, PreClass};
pub use concept::{Concept, ConceptId};
pub use context::{AttributeColumn, FormalContext};
pub use cxt::{parse_cxt, write_cxt};
pub use document::DiagramDocument;
pub use error::{Error, Result};
pub use layout::{SeedMap, Vec2};
pub use oracle::LatticeSnapshot;
pub use sets::{AttributeSet, ObjectSet};
pub use state::{ChangeClass, DiagramState};
