//! Seed vectors and attribute-additive positions.
//!
//! A concept is drawn at the sum of the seeds of the irreducible attributes
//! in its intent. Seeds point downward, so the top concept sits at the origin.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::concept::ConceptId;
use crate::error::{Error, Result};
use crate::state::DiagramState;

/// Horizontal distance between neighboring default seeds.
pub const SEED_SPACING: f64 = 1.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: Vec2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        *self = *self + rhs;
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, rhs: Vec2) {
        *self = *self - rhs;
    }
}

/// Seed vectors keyed by attribute name; the domain is the irreducible set.
pub type SeedMap = BTreeMap<String, Vec2>;

/// The default seed for the attribute of the given rank among `count`
/// irreducibles: `(rank·Δx − W/2, −1)` with row width `W = Δx·(count − 1)`.
pub fn default_seed(rank: usize, count: usize) -> Vec2 {
    let width = SEED_SPACING * count.saturating_sub(1) as f64;
    Vec2::new(rank as f64 * SEED_SPACING - width / 2.0, -1.0)
}

/// Default seed for irreducible attribute `attribute` of `state`, ranked by
/// attribute order among the current irreducibles.
pub fn assign_default_seed(state: &DiagramState, attribute: usize) -> Result<Vec2> {
    let irreducibles = state.irreducibles();
    if !irreducibles.contains(attribute) {
        return Err(Error::Reducible(state.context().attributes()[attribute].clone()));
    }
    let rank = irreducibles.ones().take_while(|&m| m < attribute).count();
    Ok(default_seed(rank, irreducibles.count_ones(..)))
}

/// `π(A, B)`: the seed sum over `B ∩ M_irr`, computed from scratch.
pub fn position(state: &DiagramState, id: ConceptId) -> Result<Vec2> {
    let concept = state
        .concept(id)
        .ok_or_else(|| Error::Inconsistent(format!("unknown concept {id}")))?;
    let attributes = state.context().attributes();
    let mut sum = Vec2::ZERO;
    for m in concept.intent.ones() {
        if !state.irreducibles().contains(m) {
            continue;
        }
        let seed = state
            .seeds()
            .get(&attributes[m])
            .ok_or_else(|| Error::Inconsistent(format!("irreducible `{}` has no seed", attributes[m])))?;
        sum += *seed;
    }
    Ok(sum)
}

/// Moves a position by a seed delta: subtracts removed seeds whose attribute
/// was in the old intent, then adds new seeds whose attribute is in the new intent.
///
/// Both the engine and document replay use this so that maintained positions
/// agree bit for bit.
pub fn shift_position(
    position: Vec2,
    seeds_removed: &SeedMap,
    in_old_intent: impl Fn(&str) -> bool,
    seeds_added: &SeedMap,
    in_new_intent: impl Fn(&str) -> bool,
) -> Vec2 {
    let mut out = position;
    for (name, seed) in seeds_removed {
        if in_old_intent(name) {
            out -= *seed;
        }
    }
    for (name, seed) in seeds_added {
        if in_new_intent(name) {
            out += *seed;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_seed_row_is_centred() {
        assert_eq!(default_seed(0, 1), Vec2::new(0.0, -1.0));
        assert_eq!(default_seed(0, 3), Vec2::new(-1.0, -1.0));
        assert_eq!(default_seed(2, 3), Vec2::new(1.0, -1.0));
        assert_eq!(default_seed(0, 2), Vec2::new(-0.5, -1.0));
    }

    #[test]
    fn vec2_serializes_as_pair() {
        let v = Vec2::new(1.5, -2.0);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1.5,-2.0]");
        assert_eq!(serde_json::from_str::<Vec2>("[1.5,-2]").unwrap(), v);
    }

    #[test]
    fn shift_respects_intent_membership() {
        let removed = SeedMap::from([("a".to_string(), Vec2::new(1.0, -1.0))]);
        let added = SeedMap::from([("n".to_string(), Vec2::new(0.0, -1.0))]);
        let p = shift_position(Vec2::new(1.0, -1.0), &removed, |m| m == "a", &added, |m| m == "n");
        assert_eq!(p, Vec2::new(0.0, -1.0));
        let q = shift_position(Vec2::ZERO, &removed, |_| false, &added, |_| false);
        assert_eq!(q, Vec2::ZERO);
    }
}
