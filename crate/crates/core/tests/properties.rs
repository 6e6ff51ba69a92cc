use latfox_core::changeset::PostClass;
use latfox_core::ifox::classify;
use latfox_core::oracle::{self, enumerate_concepts, LatticeSnapshot};
use latfox_core::random;
use latfox_core::sets;
use latfox_core::verify::{self, TrialKind};
use latfox_core::{
    parse_cxt, write_cxt, AttributeColumn, Concept, DiagramDocument, DiagramState, FormalContext, ObjectSet, PreClass,
};
use proptest::prelude::*;

fn context_strategy(max_objects: usize, max_attributes: usize) -> impl Strategy<Value = FormalContext> {
    (0..=max_objects, 0..=max_attributes).prop_flat_map(|(g, m)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), g).prop_map(move |rows| {
            let objects = (0..g).map(|i| format!("g{i}")).collect();
            let attributes = (0..m).map(|i| format!("m{i}")).collect();
            let rows = rows
                .into_iter()
                .map(|row| sets::from_indices(m, row.iter().enumerate().filter(|(_, x)| **x).map(|(i, _)| i)))
                .collect();
            FormalContext::from_rows(objects, attributes, rows).unwrap()
        })
    })
}

fn with_column(max_objects: usize, max_attributes: usize) -> impl Strategy<Value = (FormalContext, AttributeColumn)> {
    context_strategy(max_objects, max_attributes).prop_flat_map(|k| {
        let g = k.object_count();
        proptest::collection::vec(any::<bool>(), g).prop_map(move |bits| {
            let extent = sets::from_indices(g, bits.iter().enumerate().filter(|(_, x)| **x).map(|(i, _)| i));
            (k.clone(), AttributeColumn::new("n", extent))
        })
    })
}

fn subset_of(len: usize) -> impl Strategy<Value = ObjectSet> {
    proptest::collection::vec(any::<bool>(), len)
        .prop_map(move |bits| sets::from_indices(len, bits.iter().enumerate().filter(|(_, x)| **x).map(|(i, _)| i)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn galois_connection((k, a) in context_strategy(8, 7).prop_flat_map(|k| {
        let g = k.object_count();
        (Just(k), subset_of(g))
    })) {
        let closure = k.closure_extent(&a);
        prop_assert!(sets::is_subset(&a, &closure));
        prop_assert_eq!(k.closure_extent(&closure), closure.clone());
        let intent = k.derive_attributes(&a);
        prop_assert!(sets::is_subset(&intent, &k.closure_intent(&intent)));
        prop_assert_eq!(k.derive_attributes(&closure), intent);
        // antitone
        let bigger = k.all_objects();
        prop_assert!(sets::is_subset(&k.derive_attributes(&bigger), &k.derive_attributes(&a)));
    }

    #[test]
    fn apposition_lemmas((k, c) in with_column(9, 6), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        prop_assert_eq!(verify::check_lemma_sample(&mut rng, &k, &c), Vec::<String>::new());
    }

    #[test]
    fn split_undoes_apposition((k, c) in with_column(8, 6)) {
        let widened = k.apposition(&c).unwrap();
        let (back, column) = widened.split_column("n").unwrap();
        prop_assert_eq!(back, k);
        prop_assert_eq!(column, c);
    }

    #[test]
    fn classes_partition_and_bijections_invert((k, c) in with_column(8, 6)) {
        let widened = k.apposition(&c).unwrap();
        let n = k.attribute_count();
        let before = enumerate_concepts(&k);
        let after = enumerate_concepts(&widened);
        let after_extents: std::collections::HashSet<&ObjectSet> = after.iter().map(|x| &x.extent).collect();

        let mut generating = 0;
        for concept in &before {
            match classify::classify_pre(&k, &c.extent, concept) {
                PreClass::Varying => {
                    let (extent, intent) = classify::varied_image(&c.extent, concept);
                    let image = Concept { id: concept.id, extent, intent };
                    prop_assert_eq!(classify::classify_post(&widened, n, &image), PostClass::Varied);
                    prop_assert_eq!(classify::varied_preimage(n, &image), (concept.extent.clone(), concept.intent.clone()));
                }
                PreClass::Generating => {
                    generating += 1;
                    let (extent, intent) = classify::generator_image(&k, &c.extent, concept);
                    prop_assert!(sets::is_proper_subset(&extent, &concept.extent));
                    prop_assert!(after_extents.contains(&extent));
                    let image = Concept { id: concept.id, extent, intent };
                    prop_assert_eq!(classify::classify_post(&widened, n, &image), PostClass::Generated);
                    prop_assert_eq!(classify::generator_preimage(&k, n, &image), (concept.extent.clone(), concept.intent.clone()));
                    prop_assert!(after_extents.contains(&concept.extent));
                }
                PreClass::Old => prop_assert!(after_extents.contains(&concept.extent)),
            }
        }
        let generated = after.iter().filter(|x| classify::classify_post(&widened, n, x) == PostClass::Generated).count();
        prop_assert_eq!(generated, generating);
        prop_assert_eq!(after.len(), before.len() + generating);
        prop_assert_eq!(generating == 0, oracle::is_redundant_column(&k, &c));
    }

    #[test]
    fn covering_relation_generates_the_order(k in context_strategy(7, 6)) {
        let snap = LatticeSnapshot::compute(&k);
        let count = snap.concepts.len();
        let mut reach = vec![vec![false; count]; count];
        for (lo, ups) in snap.upper.iter().enumerate() {
            for up in ups {
                reach[lo][up.0 as usize] = true;
            }
        }
        for via in 0..count {
            let through = reach[via].clone();
            for row in reach.iter_mut() {
                if row[via] {
                    for (cell, &onward) in row.iter_mut().zip(&through) {
                        *cell |= onward;
                    }
                }
            }
        }
        for (lo, row) in snap.concepts.iter().zip(&reach) {
            for (up, &reached) in snap.concepts.iter().zip(row) {
                prop_assert_eq!(reached, sets::is_proper_subset(&lo.extent, &up.extent));
            }
        }
        for m in 0..k.attribute_count() {
            prop_assert_eq!(snap.upper[snap.mu[m].0 as usize].len() == 1, snap.irreducibles.contains(m));
        }
    }

    #[test]
    fn meets_and_joins(k in context_strategy(7, 6), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let concepts = enumerate_concepts(&k);
        let a = &concepts[i.index(concepts.len())];
        let b = &concepts[j.index(concepts.len())];
        let meet = sets::intersection(&a.extent, &b.extent);
        prop_assert_eq!(k.closure_extent(&meet), meet.clone());
        let mut union = a.intent.clone();
        union.union_with(&b.intent);
        prop_assert_eq!(k.derive_attributes(&meet), k.closure_intent(&union));
        let join = sets::intersection(&a.intent, &b.intent);
        prop_assert_eq!(k.closure_intent(&join), join);
    }

    #[test]
    fn insert_and_remove_match_oracle((k, c) in with_column(9, 7)) {
        prop_assert_eq!(verify::check_case(TrialKind::Insert, &k, &c, None), Vec::<String>::new());
        prop_assert_eq!(verify::check_case(TrialKind::Remove, &k, &c, None), Vec::<String>::new());
    }

    #[test]
    fn old_to_old_edges_never_change((k, c) in with_column(9, 7)) {
        let state = DiagramState::build(k);
        let (_, cs) = state.insert_column(c).unwrap();
        for (lo, up) in cs.edges_added.iter().chain(&cs.edges_removed) {
            let old = |id| cs.post_class.get(id) == Some(&PostClass::Old);
            prop_assert!(!(old(lo) && old(up)));
        }
    }

    #[test]
    fn cxt_round_trip(k in context_strategy(8, 8)) {
        prop_assert_eq!(parse_cxt(&write_cxt(&k)).unwrap(), k);
    }

    #[test]
    fn document_round_trip(k in context_strategy(8, 6)) {
        let state = DiagramState::build(k);
        let doc = DiagramDocument::from_state(&state);
        let back = DiagramDocument::from_json(&doc.to_json()).unwrap().to_state().unwrap();
        prop_assert!(back.same_diagram(&state));
    }
}
