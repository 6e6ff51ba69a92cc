//! Concept classification with respect to a column and the three bijections
//! between the classes before and after the column is present.

use std::collections::BTreeMap;

use crate::changeset::{PostClass, PreClass};
use crate::concept::{Concept, ConceptId};
use crate::context::{AttributeColumn, FormalContext};
use crate::sets::{self, AttributeSet, ObjectSet};

/// Classifies a concept of `context` (which lacks the column).
pub fn classify_pre(context: &FormalContext, column: &ObjectSet, concept: &Concept) -> PreClass {
    if sets::is_subset(&concept.extent, column) {
        PreClass::Varying
    } else if context.derive_attributes(&sets::intersection(&concept.extent, column)) == concept.intent {
        PreClass::Generating
    } else {
        PreClass::Old
    }
}

/// Classifies a concept of `context`, which contains the column at index `n`.
pub fn classify_post(context: &FormalContext, n: usize, concept: &Concept) -> PostClass {
    if !concept.intent.contains(n) {
        return PostClass::Old;
    }
    let mut rest = concept.intent.clone();
    rest.set(n, false);
    if context.derive_objects(&rest) == concept.extent {
        PostClass::Varied
    } else {
        PostClass::Generated
    }
}

pub fn classify_all_pre<'a>(
    context: &FormalContext,
    column: &AttributeColumn,
    concepts: impl Iterator<Item = &'a Concept>,
) -> BTreeMap<ConceptId, PreClass> {
    concepts
        .map(|c| (c.id, classify_pre(context, &column.extent, c)))
        .collect()
}

pub fn classify_all_post<'a>(
    context: &FormalContext,
    n: usize,
    concepts: impl Iterator<Item = &'a Concept>,
) -> BTreeMap<ConceptId, PostClass> {
    concepts.map(|c| (c.id, classify_post(context, n, c))).collect()
}

/// `(A, B) ↦ (A ∩ n^J, B ∪ {n})` for a generating concept; `n` is the index
/// the column takes in the widened intent.
pub fn generator_image(context: &FormalContext, column: &ObjectSet, concept: &Concept) -> (ObjectSet, AttributeSet) {
    assert_eq!(
        classify_pre(context, column, concept),
        PreClass::Generating,
        "generator_image applied to a non-generating concept"
    );
    (
        sets::intersection(&concept.extent, column),
        sets::with_appended(&concept.intent, true),
    )
}

/// Inverse of [`generator_image`]: `(A, B) ↦ ((B∖n)^I, B∖n)` in the context
/// without the column.
pub fn generator_preimage(without_column: &FormalContext, n: usize, concept: &Concept) -> (ObjectSet, AttributeSet) {
    let rest = sets::without_index(&concept.intent, n);
    (without_column.derive_objects(&rest), rest)
}

/// `(A, B) ↦ (A, B ∪ {n})` for a varying concept.
pub fn varied_image(column: &ObjectSet, concept: &Concept) -> (ObjectSet, AttributeSet) {
    assert!(
        sets::is_subset(&concept.extent, column),
        "varied_image applied to a non-varying concept"
    );
    (concept.extent.clone(), sets::with_appended(&concept.intent, true))
}

/// Inverse of [`varied_image`]: drops the column from the intent.
pub fn varied_preimage(n: usize, concept: &Concept) -> (ObjectSet, AttributeSet) {
    (concept.extent.clone(), sets::without_index(&concept.intent, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::enumerate_concepts;

    fn find<'a>(k: &FormalContext, cs: &'a [Concept], extent: &[&str]) -> &'a Concept {
        let e = k.object_set(extent).unwrap();
        cs.iter().find(|c| c.extent == e).unwrap()
    }

    #[test]
    fn pre_classes_on_k2() {
        let k = fixtures::k2();
        let cs = enumerate_concepts(&k);
        let c = fixtures::column_c();
        let d = fixtures::column_d();
        assert_eq!(classify_pre(&k, &c.extent, find(&k, &cs, &["g1"])), PreClass::Varying);
        assert_eq!(
            classify_pre(&k, &d.extent, find(&k, &cs, &["g1", "g2"])),
            PreClass::Generating
        );
        assert_eq!(
            classify_pre(&k, &d.extent, find(&k, &cs, &["g1"])),
            PreClass::Generating
        );
        let all = k.all_objects();
        assert!(cs.iter().all(|x| classify_pre(&k, &all, x) == PreClass::Varying));
    }

    #[test]
    fn post_classes() {
        let kd = fixtures::k2d();
        let cs = enumerate_concepts(&kd);
        assert_eq!(classify_post(&kd, 2, find(&kd, &cs, &["g2"])), PostClass::Generated);
        assert_eq!(classify_post(&kd, 2, find(&kd, &cs, &["g1"])), PostClass::Old);
        let kc = fixtures::k2c();
        let cs = enumerate_concepts(&kc);
        assert_eq!(classify_post(&kc, 2, find(&kc, &cs, &["g1"])), PostClass::Varied);
    }

    #[test]
    fn generator_images_on_k2d() {
        let k = fixtures::k2();
        let kd = fixtures::k2d();
        let cs = enumerate_concepts(&k);
        let d = fixtures::column_d();
        let (ext, int) = generator_image(&k, &d.extent, find(&k, &cs, &["g1", "g2"]));
        assert_eq!(kd.object_names(&ext), ["g2"]);
        assert_eq!(kd.attribute_names(&int), ["b", "d"]);
        let (ext, int) = generator_image(&k, &d.extent, find(&k, &cs, &["g1"]));
        assert!(kd.object_names(&ext).is_empty());
        assert_eq!(kd.attribute_names(&int), ["a", "b", "d"]);

        let new = Concept {
            id: ConceptId(9),
            extent: ext,
            intent: int,
        };
        let (back_ext, back_int) = generator_preimage(&k, 2, &new);
        assert_eq!(k.object_names(&back_ext), ["g1"]);
        assert_eq!(k.attribute_names(&back_int), ["a", "b"]);
    }

    #[test]
    #[should_panic(expected = "non-generating")]
    fn generator_image_rejects_varying() {
        let k = fixtures::k2();
        let cs = enumerate_concepts(&k);
        let c = fixtures::column_c();
        generator_image(&k, &c.extent, find(&k, &cs, &["g1"]));
    }

    #[test]
    fn varied_image_round_trip() {
        let k = fixtures::k2();
        let kc = fixtures::k2c();
        let cs = enumerate_concepts(&k);
        let c = fixtures::column_c();
        let orig = find(&k, &cs, &["g1"]);
        let (ext, int) = varied_image(&c.extent, orig);
        assert_eq!(kc.attribute_names(&int), ["a", "b", "c"]);
        let varied = Concept {
            id: orig.id,
            extent: ext,
            intent: int,
        };
        assert_eq!(varied_preimage(2, &varied), (orig.extent.clone(), orig.intent.clone()));

        let top = find(&k, &cs, &["g1", "g2"]);
        let (ext, _) = varied_image(&k.all_objects(), top);
        assert_eq!(ext, k.all_objects());
    }
}
