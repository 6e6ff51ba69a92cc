//! Seeded random contexts and columns for property trials and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::{AttributeColumn, FormalContext};
use crate::sets;

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Context with objects `g0..` and attributes `m0..`, each cross present
/// independently with probability `density`.
pub fn random_context(rng: &mut impl Rng, objects: usize, attributes: usize, density: f64) -> FormalContext {
    let object_names = (0..objects).map(|g| format!("g{g}")).collect();
    let attribute_names = (0..attributes).map(|m| format!("m{m}")).collect();
    let rows = (0..objects)
        .map(|_| sets::from_indices(attributes, (0..attributes).filter(|_| rng.gen_bool(density))))
        .collect();
    FormalContext::from_rows(object_names, attribute_names, rows).expect("generated names are distinct")
}

pub fn random_column(rng: &mut impl Rng, context: &FormalContext, name: &str, density: f64) -> AttributeColumn {
    let extent = sets::from_indices(
        context.object_count(),
        (0..context.object_count()).filter(|_| rng.gen_bool(density)),
    );
    AttributeColumn::new(name, extent)
}
