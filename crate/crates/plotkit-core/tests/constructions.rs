//! Unitization and its adjunction, products, coproducts, augmentations,
//! natural transformations, and the punctor plot.

use std::collections::{BTreeMap, BTreeSet};

use plotkit_core::arrows::{order_of, OrderResult};
use plotkit_core::construct::{
    augment, check_unitization_adjunction, compose_nt, conditional_unitize, copair_from_coproduct,
    coproduct, deunitize, force_unitize, identity_nt, pair_into_product, product, punctor_plot,
    validate_nt, AdjunctionReport, ConstructError, NtViolation,
};
use plotkit_core::punctor::{
    compose_punctors, enumerate_punctors, identity_punctor, is_functor, validate_punctor,
};
use plotkit_core::subplot::is_subplot;
use plotkit_core::{Plot, Punctor};
use plotkit_testkit::{cayley_fixture, cyclic_group, left_zero_magma, plot_from, terminal_category};

fn ids(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn arrow_set(p: &Plot) -> BTreeSet<String> {
    p.arrows().keys().cloned().collect()
}

#[test]
fn forced_unitization_of_a_single_arrow() {
    let p = plot_from(&["A", "B"], &[("f", "A", "B")], &[]);
    let q = force_unitize(&p).unwrap();
    assert_eq!(arrow_set(&q), ids(&["1@A", "1@B", "f"]));
    assert_eq!(q.endpoints("1@A"), Some((&"A".to_string(), &"A".to_string())));
    assert_eq!(q.comp().len(), 4);
    assert_eq!(q.compose("1@A", "1@A"), Some(&"1@A".to_string()));
    assert_eq!(q.compose("1@B", "1@B"), Some(&"1@B".to_string()));
    assert_eq!(q.compose("1@A", "f"), Some(&"f".to_string()));
    assert_eq!(q.compose("f", "1@B"), Some(&"f".to_string()));
    assert_eq!(
        q.compute_identities(),
        map(&[("A", "1@A"), ("B", "1@B")])
    );
    assert!(q.classify().is_unital);
    assert!(is_subplot(&p, &q).is_subplot);
}

#[test]
fn forced_unitization_demotes_existing_identities() {
    let p = terminal_category();
    let q = force_unitize(&p).unwrap();
    assert_eq!(arrow_set(&q), ids(&["1", "1@*"]));
    assert_eq!(q.compute_identities(), map(&[("*", "1@*")]));
    // The old identity keeps its self-composition but no longer acts on
    // the new loop.
    assert_eq!(q.compose("1", "1"), Some(&"1".to_string()));
    assert_eq!(q.compose("1", "1@*"), Some(&"1".to_string()));
}

#[test]
fn fresh_name_collisions_are_errors()  {
    let p = plot_from(&["A"], &[("1@A", "A", "A")], &[]);
    assert_eq!(
        force_unitize(&p),
        Err(ConstructError::FreshIdCollision("1@A".to_string()))
    );
    assert_eq!(
        conditional_unitize(&p),
        Err(ConstructError::FreshIdCollision("1@A".to_string()))
    );

    // A collision at an already-unital object does not matter: no loop is
    // adjoined there.
    let q = plot_from(
        &["A"],
        &[("e", "A", "A"), ("1@A", "A", "A")],
        &[("e", "e", "e"), ("e", "1@A", "1@A"), ("1@A", "e", "1@A")],
    );
    assert_eq!(q.compute_identities(), map(&[("A", "e")]));
    assert_eq!(conditional_unitize(&q).unwrap(), q);
    assert!(force_unitize(&q).is_err());
}

#[test]
fn deunitize_undoes_forced_unitization() {
    for p in [
        cayley_fixture(),
        left_zero_magma(4),
        terminal_category(),
        cyclic_group(3),
        plot_from(&["A", "B"], &[("f", "A", "B")], &[]),
        Plot::empty(),
    ] {
        assert_eq!(deunitize(&force_unitize(&p).unwrap()), p);
    }

    // Deunitizing drops natural identities and entries mentioning them.
    let bare = deunitize(&cyclic_group(2));
    assert_eq!(arrow_set(&bare), ids(&["1"]));
    assert!(bare.comp().is_empty(), "1 after 1 was the dropped identity");
}

#[test]
fn conditional_unitization_is_a_fixpoint_exactly_on_unital_plots() {
    for unital in [terminal_category(), cyclic_group(4), force_unitize(&cayley_fixture()).unwrap()]
    {
        assert_eq!(conditional_unitize(&unital).unwrap(), unital);
    }

    // Without any identities, conditional and forced unitization agree.
    let p = cayley_fixture();
    assert_eq!(conditional_unitize(&p).unwrap(), force_unitize(&p).unwrap());

    // With a mix, loops appear only at the non-unital objects.
    let mixed = plot_from(
        &["A", "B"],
        &[("i", "A", "A"), ("f", "A", "B")],
        &[("i", "i", "i"), ("i", "f", "f")],
    );
    let q = conditional_unitize(&mixed).unwrap();
    assert_ne!(q, mixed);
    assert_eq!(arrow_set(&q), ids(&["i", "f", "1@B"]));
    assert_eq!(q.compute_identities(), map(&[("A", "i"), ("B", "1@B")]));
    assert_eq!(conditional_unitize(&q).unwrap(), q);
}

#[test]
fn the_unitization_adjunction_holds() {
    let unital = [terminal_category(), cyclic_group(2), cyclic_group(3)];
    let any = [
        cayley_fixture(),
        left_zero_magma(3),
        plot_from(&["A", "B"], &[("f", "A", "B")], &[]),
        // Decoy names force the internal escalation to longer markers.
        plot_from(&["A"], &[("1@A", "A", "A"), ("1@@A", "A", "A")], &[]),
        cyclic_group(4),
        Plot::empty(),
    ];
    for p in &any {
        for q in &unital {
            assert_eq!(
                check_unitization_adjunction(p, q).unwrap(),
                AdjunctionReport {
                    holds: true,
                    failing_equation: None
                }
            );
        }
    }
    assert_eq!(
        check_unitization_adjunction(&cayley_fixture(), &left_zero_magma(3)),
        Err(ConstructError::NotUnital)
    );
}

#[test]
fn products_are_componentwise() {
    let (p, projections) = product(&[cyclic_group(2), cyclic_group(3)]);
    assert_eq!(p.objects(), &ids(&["*,*"]));
    assert_eq!(p.arrow_count(), 6);
    assert_eq!(p.comp().len(), 36);
    assert_eq!(p.compose("1,2", "1,1"), Some(&"0,0".to_string()));
    let report = p.classify();
    assert!(report.is_category && report.is_unital);

    // The product of cyclic groups of coprime orders is cyclic.
    assert_eq!(
        order_of(&p, "1,1", 7, 7).unwrap(),
        OrderResult::Periodic { index: 1, period: 6, order: 6 }
    );

    assert_eq!(projections.len(), 2);
    for (i, proj) in projections.iter().enumerate() {
        assert!(is_functor(proj));
        assert_eq!(proj.source(), &p);
        assert_eq!(proj.apply_arrow("1,2"), Some(&["1", "2"][i].to_string()));
    }

    assert_eq!(product(&[]), (Plot::empty(), Vec::new()));

    // A singleton product is the factor itself, projected identically.
    let (single, proj) = product(&[cyclic_group(2)]);
    assert_eq!(single, cyclic_group(2));
    assert_eq!(proj, vec![identity_punctor(&cyclic_group(2))]);
}

#[test]
fn pairing_into_a_product_is_unique() {
    let z4 = cyclic_group(4);
    let parity = validate_punctor(
        &z4,
        &cyclic_group(2),
        &map(&[("*", "*")]),
        &map(&[("0", "0"), ("1", "1"), ("2", "0"), ("3", "1")]),
    )
    .unwrap();
    let fs = [parity.clone(), identity_punctor(&z4)];

    let paired = pair_into_product(&fs).unwrap();
    assert_eq!(paired.apply_arrow("3"), Some(&"1,3".to_string()));
    let (prod, projections) = product(&[cyclic_group(2), z4.clone()]);
    assert_eq!(paired.target(), &prod);
    for (f, proj) in fs.iter().zip(&projections) {
        assert_eq!(&compose_punctors(&paired, proj).unwrap(), f);
    }

    // Exhaustively, no other punctor satisfies both projection equations.
    let matching: Vec<Punctor> = enumerate_punctors(&z4, &prod, 1_000_000)
        .unwrap()
        .into_iter()
        .filter(|h| {
            fs.iter()
                .zip(&projections)
                .all(|(f, proj)| &compose_punctors(h, proj).unwrap() == f)
        })
        .collect();
    assert_eq!(matching, vec![paired]);

    assert_eq!(pair_into_product(&[]), Err(ConstructError::FactorMismatch));
    let other_source = identity_punctor(&cyclic_group(2));
    assert_eq!(
        pair_into_product(&[fs[1].clone(), other_source]),
        Err(ConstructError::FactorMismatch)
    );
}

#[test]
fn coproducts_are_tagged_disjoint_unions() {
    let z2 = cyclic_group(2);
    let (p, injections) = coproduct(&[z2.clone(), z2.clone()]);
    assert_eq!(p.objects(), &ids(&["0:*", "1:*"]));
    assert_eq!(arrow_set(&p), ids(&["0:0", "0:1", "1:0", "1:1"]));
    assert_eq!(p.comp().len(), 8, "composition stays within components");
    assert_eq!(p.compose("0:1", "0:1"), Some(&"0:0".to_string()));
    assert_eq!(p.compose("0:1", "1:1"), None);
    assert!(p.classify().is_unital);

    for inj in &injections {
        assert!(is_functor(inj));
        assert_eq!(inj.target(), &p);
    }

    assert_eq!(coproduct(&[]).0, Plot::empty());
}

#[test]
fn copairing_out_of_a_coproduct_is_unique() {
    let z2 = cyclic_group(2);
    let collapse = validate_punctor(
        &z2,
        &z2,
        &map(&[("*", "*")]),
        &map(&[("0", "0"), ("1", "0")]),
    )
    .unwrap();
    let fs = [identity_punctor(&z2), collapse];

    let copaired = copair_from_coproduct(&fs).unwrap();
    let (sum, injections) = coproduct(&[z2.clone(), z2.clone()]);
    assert_eq!(copaired.source(), &sum);
    assert_eq!(copaired.apply_arrow("0:1"), Some(&"1".to_string()));
    assert_eq!(copaired.apply_arrow("1:1"), Some(&"0".to_string()));
    for (f, inj) in fs.iter().zip(&injections) {
        assert_eq!(&compose_punctors(inj, &copaired).unwrap(), f);
    }

    let matching: Vec<Punctor> = enumerate_punctors(&sum, &z2, 1_000_000)
        .unwrap()
        .into_iter()
        .filter(|h| {
            fs.iter()
                .zip(&injections)
                .all(|(f, inj)| &compose_punctors(inj, h).unwrap() == f)
        })
        .collect();
    assert_eq!(matching, vec![copaired]);

    assert_eq!(copair_from_coproduct(&[]), Err(ConstructError::FactorMismatch));
    let into_z4 = validate_punctor(
        &z2,
        &cyclic_group(4),
        &map(&[("*", "*")]),
        &map(&[("0", "0"), ("1", "2")]),
    )
    .unwrap();
    assert_eq!(
        copair_from_coproduct(&[fs[0].clone(), into_z4]),
        Err(ConstructError::FactorMismatch)
    );
}

/// The full second-projection operation on a two-element index set.
fn proj2(indices: &[&str]) -> BTreeMap<(String, String), String> {
    let mut zeta = BTreeMap::new();
    for i in indices {
        for j in indices {
            zeta.insert((i.to_string(), j.to_string()), j.to_string());
        }
    }
    zeta
}

#[test]
fn augmenting_copies_arrows_per_index() {
    // A composition-free loop just doubles.
    let p = plot_from(&["A"], &[("f", "A", "A")], &[]);
    let q = augment(&p, &ids(&["0", "1"]), &proj2(&["0", "1"])).unwrap();
    assert_eq!(q.objects(), p.objects());
    assert_eq!(arrow_set(&q), ids(&["f,0", "f,1"]));
    assert!(q.comp().is_empty());
}

#[test]
fn augmenting_amalgamates_identity_copies() {
    let z2 = cyclic_group(2);
    let q = augment(&z2, &ids(&["0", "1"]), &proj2(&["0", "1"])).unwrap();
    assert_eq!(arrow_set(&q), ids(&["0", "1,0", "1,1"]));
    assert_eq!(q.comp().len(), 9);

    // The identity class reads through the canonical index 0, and the
    // second projection routes every composite to the right factor's copy.
    assert_eq!(q.compose("0", "0"), Some(&"0".to_string()));
    assert_eq!(q.compose("0", "1,1"), Some(&"1,1".to_string()));
    assert_eq!(q.compose("1,1", "0"), Some(&"1,0".to_string()));
    assert_eq!(q.compose("1,0", "1,1"), Some(&"0".to_string()));

    // Right-composing with the old identity can move between copies, so
    // the augmentation is not unital.
    assert!(!q.classify().is_unital);
}

#[test]
fn augmenting_by_one_index_renames_only() {
    let z2 = cyclic_group(2);
    let mut zeta = BTreeMap::new();
    zeta.insert(("0".to_string(), "0".to_string()), "0".to_string());
    let q = augment(&z2, &ids(&["0"]), &zeta).unwrap();
    assert_eq!(arrow_set(&q), ids(&["0", "1,0"]));
    assert_eq!(q.compose("1,0", "1,0"), Some(&"0".to_string()));
    assert_eq!(q.compose("0", "1,0"), Some(&"1,0".to_string()));
    let report = q.classify();
    assert!(report.is_unital && report.is_category);
}

#[test]
fn augmenting_with_a_partial_operation_drops_composites() {
    let z2 = cyclic_group(2);
    let mut zeta = BTreeMap::new();
    zeta.insert(("0".to_string(), "0".to_string()), "0".to_string());
    let q = augment(&z2, &ids(&["0", "1"]), &zeta).unwrap();
    assert_eq!(arrow_set(&q), ids(&["0", "1,0", "1,1"]));
    // Only index pairs (0, 0) compose, so the 1-copies are compositionally
    // inert.
    assert_eq!(q.comp().len(), 4);
    assert_eq!(q.compose("1,1", "0"), None);
    assert_eq!(q.compose("1,0", "1,0"), Some(&"0".to_string()));
}

#[test]
fn augmenting_errors_and_degenerate_cases() {
    let z2 = cyclic_group(2);
    let mut bad = BTreeMap::new();
    bad.insert(("0".to_string(), "9".to_string()), "0".to_string());
    assert_eq!(
        augment(&z2, &ids(&["0"]), &bad),
        Err(ConstructError::UnknownIndex("9".to_string()))
    );

    // The empty index set leaves a discrete plot on the same objects.
    let q = augment(&z2, &BTreeSet::new(), &BTreeMap::new()).unwrap();
    assert_eq!(q.objects(), z2.objects());
    assert_eq!(q.arrow_count(), 0);
}

#[test]
fn natural_transformations_between_group_endomorphisms() {
    let z2 = cyclic_group(2);
    let id = identity_punctor(&z2);
    let collapse = validate_punctor(
        &z2,
        &z2,
        &map(&[("*", "*")]),
        &map(&[("0", "0"), ("1", "0")]),
    )
    .unwrap();

    // Between the identity and itself both loops are natural.
    for c in ["0", "1"] {
        let nt = validate_nt(&id, &id, &map(&[("*", c)])).unwrap();
        assert_eq!(nt.component("*"), Some(&c.to_string()));
    }

    // Across the two distinct endomorphisms nothing commutes.
    for (from, to) in [(&id, &collapse), (&collapse, &id)] {
        for c in ["0", "1"] {
            assert_eq!(
                validate_nt(from, to, &map(&[("*", c)])),
                Err(ConstructError::InvalidNt(vec![NtViolation::Naturality {
                    arrow: "1".to_string()
                }]))
            );
        }
    }

    // Identity transformation and vertical composition.
    let idnt = identity_nt(&id);
    assert_eq!(idnt.component("*"), Some(&"0".to_string()));
    let one = validate_nt(&id, &id, &map(&[("*", "1")])).unwrap();
    assert_eq!(compose_nt(&idnt, &one).unwrap(), Some(one.clone()));
    assert_eq!(
        compose_nt(&one, &one).unwrap().unwrap().components(),
        &map(&[("*", "0")])
    );
}

#[test]
fn transformation_validation_reports_typed_violations() {
    let z2 = cyclic_group(2);
    let id = identity_punctor(&z2);
    let err = validate_nt(&id, &id, &map(&[("ghost", "0")]));
    assert_eq!(
        err,
        Err(ConstructError::InvalidNt(vec![
            NtViolation::UnknownComponentObject("ghost".to_string()),
            NtViolation::MissingComponent("*".to_string()),
        ]))
    );
    assert_eq!(
        validate_nt(&id, &id, &map(&[("*", "9")])),
        Err(ConstructError::InvalidNt(vec![
            NtViolation::UnknownComponentArrow {
                object: "*".to_string(),
                component: "9".to_string()
            }
        ]))
    );
    assert_eq!(
        validate_nt(&id, &identity_punctor(&cyclic_group(3)), &map(&[])),
        Err(ConstructError::NotParallel)
    );

    // Components live in the conditionally unitized target, so a fresh
    // identity is a legal component even when the target lacks its own.
    let p = plot_from(&["X"], &[], &[]);
    let q = plot_from(&["A", "B"], &[("f", "A", "B")], &[]);
    let to_a = validate_punctor(&p, &q, &map(&[("X", "A")]), &map(&[])).unwrap();
    let to_b = validate_punctor(&p, &q, &map(&[("X", "B")]), &map(&[])).unwrap();
    assert!(validate_nt(&to_a, &to_a, &map(&[("X", "1@A")])).is_ok());
    assert!(validate_nt(&to_a, &to_b, &map(&[("X", "f")])).is_ok());
    assert_eq!(
        validate_nt(&to_a, &to_b, &map(&[("X", "1@A")])),
        Err(ConstructError::InvalidNt(vec![
            NtViolation::ComponentEndpoints {
                object: "X".to_string(),
                component: "1@A".to_string()
            }
        ]))
    );
}

#[test]
fn transformation_composition_can_be_undefined() {
    // Two arrows that never compose in the target, not even unitized.
    let p = plot_from(&["X"], &[], &[]);
    let q = plot_from(&["A", "B", "C"], &[("f", "A", "B"), ("g", "B", "C")], &[]);
    let at = |o: &str| validate_punctor(&p, &q, &map(&[("X", o)]), &map(&[])).unwrap();

    let first = validate_nt(&at("A"), &at("B"), &map(&[("X", "f")])).unwrap();
    let second = validate_nt(&at("B"), &at("C"), &map(&[("X", "g")])).unwrap();
    assert_eq!(compose_nt(&first, &second).unwrap(), None);

    // Mismatched middles are also a normal non-result.
    let loop_b = validate_nt(&at("B"), &at("B"), &map(&[("X", "1@B")])).unwrap();
    assert_eq!(compose_nt(&loop_b, &first).unwrap(), None);

    // Different plot pairs are a type error instead.
    let elsewhere = identity_nt(&identity_punctor(&cyclic_group(2)));
    assert_eq!(compose_nt(&first, &elsewhere), Err(ConstructError::NotParallel));
}

#[test]
fn the_punctor_plot_between_small_groups() {
    let z2 = cyclic_group(2);
    let (plot, punctors) = punctor_plot(&z2, &z2, None, 1_000_000).unwrap();
    assert_eq!(punctors.len(), 2);
    assert_eq!(plot.objects(), &ids(&["F0", "F1"]));
    assert_eq!(
        arrow_set(&plot),
        ids(&["F0>F0#0", "F0>F0#1", "F1>F1#0", "F1>F1#1"])
    );
    // Each endomorphism's transformations form a copy of the group; the
    // two components never connect.
    assert_eq!(plot.compose("F1>F1#1", "F1>F1#1"), Some(&"F1>F1#0".to_string()));
    assert_eq!(plot.compose("F0>F0#1", "F1>F1#1"), None);
    let report = plot.classify();
    assert!(report.is_unital && report.is_category);

    // Passing the list explicitly gives the same plot.
    let (same, _) = punctor_plot(&z2, &z2, Some(&punctors), 1_000_000).unwrap();
    assert_eq!(same, plot);

    // Foreign punctors and tiny caps are rejected.
    let foreign = identity_punctor(&cyclic_group(3));
    assert_eq!(
        punctor_plot(&z2, &z2, Some(&[foreign]), 1_000_000),
        Err(ConstructError::NotParallel)
    );
    match punctor_plot(&z2, &z2, None, 3) {
        Err(ConstructError::Overflow { required, cap }) => {
            assert_eq!(cap, 3);
            assert!(required > cap);
        }
        other => panic!("expected Overflow, got {other:?}"),
    }
}

#[test]
fn the_punctor_plot_unitizes_non_unital_targets() {
    // Punctors from a dot into a bare arrow: two of them, connected by f,
    // with fresh loops supplying the endpoints' transformations.
    let p = plot_from(&["X"], &[], &[]);
    let q = plot_from(&["A", "B"], &[("f", "A", "B")], &[]);
    let (plot, punctors) = punctor_plot(&p, &q, None, 1_000_000).unwrap();
    assert_eq!(punctors.len(), 2);
    assert_eq!(
        arrow_set(&plot),
        ids(&["F0>F0#1@A", "F0>F1#f", "F1>F1#1@B"])
    );
    assert!(plot.classify().is_unital);
}
