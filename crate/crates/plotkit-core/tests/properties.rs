//! Randomized cross-checks against independent oracles: a dense-table
//! recomputation of the associativity profile and the arrow classes, the
//! conditional composition laws, unitization round trips, componentwise
//! structure of products and coproducts, and connectivity.

use std::collections::{BTreeMap, BTreeSet};

use plotkit_core::arrows::{classify_arrows, inverses};
use plotkit_core::connect::{is_m_connection, is_m_path, m_components, m_connected, m_equivalent};
use plotkit_core::construct::{
    check_unitization_adjunction, conditional_unitize, copair_from_coproduct, coproduct,
    deunitize, force_unitize, pair_into_product, product,
};
use plotkit_core::punctor::{compose_punctors, enumerate_punctors};
use plotkit_core::Plot;
use plotkit_testkit::{
    cayley_fixture, cyclic_group, gen_category, gen_plot, gen_punctor, gen_saturated_magma,
    gen_unital_plot, plot_from, rng,
};
use proptest::prelude::*;
use rand::Rng;

/// Dense indexed view of a plot, recomputed from scratch so the checks
/// below share no code with the library's classification routines.
struct Table {
    names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    comp: Vec<Option<usize>>,
}

#[derive(Debug, PartialEq)]
struct LiteralProfile {
    left_pre: bool,
    right_pre: bool,
    strongly: bool,
    associative: bool,
    left_dis: bool,
    right_dis: bool,
}

impl Table {
    fn new(p: &Plot) -> Table {
        let names: Vec<String> = p.arrows().keys().cloned().collect();
        let arrow_index: BTreeMap<&String, usize> =
            names.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let objs: Vec<&String> = p.objects().iter().collect();
        let obj_index: BTreeMap<&String, usize> =
            objs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let n = names.len();
        let mut src = vec![0; n];
        let mut tgt = vec![0; n];
        for (i, f) in names.iter().enumerate() {
            let (s, t) = p.endpoints(f).unwrap();
            src[i] = obj_index[s];
            tgt[i] = obj_index[t];
        }
        let mut comp = vec![None; n * n];
        for ((f, g), h) in p.comp() {
            comp[arrow_index[f] * n + arrow_index[g]] = Some(arrow_index[h]);
        }
        Table { names, src, tgt, comp }
    }

    fn len(&self) -> usize {
        self.names.len()
    }

    fn at(&self, i: usize, j: usize) -> Option<usize> {
        self.comp[i * self.len() + j]
    }

    /// All six associativity flags in one literal triple quantification.
    fn profile(&self) -> LiteralProfile {
        let n = self.len();
        let mut p = LiteralProfile {
            left_pre: true,
            right_pre: true,
            strongly: true,
            associative: true,
            left_dis: true,
            right_dis: true,
        };
        for x in 0..n {
            for y in 0..n {
                let xy = self.at(x, y);
                for z in 0..n {
                    let yz = self.at(y, z);
                    let left = xy.and_then(|v| self.at(v, z));
                    let right = yz.and_then(|v| self.at(x, v));
                    if xy.is_some() && yz.is_some() {
                        if left.is_some() && (right.is_none() || left != right) {
                            p.left_pre = false;
                        }
                        if right.is_some() && (left.is_none() || left != right) {
                            p.right_pre = false;
                        }
                        if left.is_none() {
                            p.strongly = false;
                        }
                        if left.is_some() && right.is_some() && left != right {
                            p.associative = false;
                        }
                    }
                    if xy.is_some() && left.is_some() && (yz.is_none() || right != left) {
                        p.left_dis = false;
                    }
                    if yz.is_some() && right.is_some() && (xy.is_none() || left != right) {
                        p.right_dis = false;
                    }
                }
            }
        }
        p.strongly = p.strongly && p.left_pre && p.right_pre;
        p
    }

    fn monic(&self, f: usize) -> bool {
        let n = self.len();
        for h1 in 0..n {
            for h2 in h1 + 1..n {
                if let (Some(a), Some(b)) = (self.at(h1, f), self.at(h2, f)) {
                    if a == b {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn epic(&self, f: usize) -> bool {
        let n = self.len();
        for h1 in 0..n {
            for h2 in h1 + 1..n {
                if let (Some(a), Some(b)) = (self.at(f, h1), self.at(f, h2)) {
                    if a == b {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn right_split(&self, f: usize) -> bool {
        let n = self.len();
        (0..n)
            .filter(|&k| self.tgt[k] == self.tgt[f])
            .all(|k| (0..n).any(|h| self.at(h, f) == Some(k)))
    }

    fn left_split(&self, f: usize) -> bool {
        let n = self.len();
        (0..n)
            .filter(|&k| self.src[k] == self.src[f])
            .all(|k| (0..n).any(|h| self.at(f, h) == Some(k)))
    }
}

/// A mixed bag of deterministic random instances: truncated path
/// categories (which satisfy every associativity flag), sparse plots, and
/// saturated one-object magmas.
fn instances(seed: u64) -> Vec<Plot> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for _ in 0..110 {
        out.push(gen_category(&mut r, 2, 2));
    }
    for _ in 0..140 {
        out.push(gen_plot(&mut r, 4, 8));
    }
    for _ in 0..80 {
        let n = r.gen_range(2..=4);
        out.push(gen_saturated_magma(&mut r, n));
    }
    out
}

#[test]
fn profile_and_arrow_flags_match_a_dense_table_oracle() {
    for p in instances(11).into_iter().take(220) {
        let t = Table::new(&p);
        let literal = t.profile();
        let profile = p.associativity_profile();
        assert_eq!(literal.left_pre, profile.left_pre_associative);
        assert_eq!(literal.right_pre, profile.right_pre_associative);
        assert_eq!(
            literal.left_pre && literal.right_pre,
            profile.pre_associative
        );
        assert_eq!(literal.strongly, profile.strongly_associative);
        assert_eq!(literal.associative, profile.associative);
        assert_eq!(literal.left_dis, profile.left_dissociative);
        assert_eq!(literal.right_dis, profile.right_dissociative);
        assert_eq!(literal.left_dis && literal.right_dis, profile.dissociative);

        let report = classify_arrows(&p);
        for (i, f) in t.names.iter().enumerate() {
            let flags = report.get(f).unwrap();
            assert_eq!(flags.monic, t.monic(i), "{f} monic");
            assert_eq!(flags.epic, t.epic(i), "{f} epic");
            assert_eq!(flags.left_split, t.left_split(i), "{f} left split");
            assert_eq!(flags.right_split, t.right_split(i), "{f} right split");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn duality_is_an_involution(seed in any::<u64>()) {
        let p = gen_plot(&mut rng(seed), 6, 12);
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn degree_sum_is_twice_the_arrow_count(seed in any::<u64>()) {
        let p = gen_plot(&mut rng(seed), 8, 20);
        let total: usize = p
            .objects()
            .iter()
            .map(|a| p.degrees(a).unwrap().2)
            .sum();
        prop_assert_eq!(total, 2 * p.arrow_count());
    }
}

#[test]
fn duality_mirrors_every_arrow_flag() {
    let mirrored = [
        ("monic", "epic"),
        ("left_split", "right_split"),
        ("left_invertible", "right_invertible"),
        ("left_iso", "right_iso"),
        ("left_neutral", "right_neutral"),
        ("left_identity", "right_identity"),
        ("constant", "coconstant"),
    ];
    let mut r = rng(12);
    for _ in 0..60 {
        let p = gen_plot(&mut r, 6, 12);
        let d = p.dual();
        let here = classify_arrows(&p);
        let there = classify_arrows(&d);
        for f in p.arrows().keys() {
            let a = here.get(f).unwrap();
            let b = there.get(f).unwrap();
            for (l, r) in mirrored {
                assert_eq!(a.flag(l), b.flag(r), "{f}: {l} vs dual {r}");
                assert_eq!(a.flag(r), b.flag(l), "{f}: {r} vs dual {l}");
            }
            for (name, value) in a.flags() {
                if mirrored.iter().all(|(l, r)| name != *l && name != *r) {
                    assert_eq!(Some(value), b.flag(name), "{f}: {name} is self-dual");
                }
            }
            assert_eq!(a.left_inverses, b.right_inverses, "{f} inverse sets swap");
            assert_eq!(a.strong_inverse, b.strong_inverse, "{f} strong inverse");
        }
        let pp = p.associativity_profile();
        let dp = d.associativity_profile();
        assert_eq!(pp.left_pre_associative, dp.right_pre_associative);
        assert_eq!(pp.left_dissociative, dp.right_dissociative);
        assert_eq!(pp.strongly_associative, dp.strongly_associative);
        assert_eq!(pp.associative, dp.associative);
    }
}

/// Runs `check` on every instance whose literal profile passes `filter`,
/// and asserts both a minimum number of qualifying instances and a
/// minimum number of qualifying composable pairs across them.
fn filtered_instances(
    filter: impl Fn(&LiteralProfile) -> bool,
    mut check: impl FnMut(&Plot, &Table) -> usize,
) {
    let mut hits = 0usize;
    let mut pairs = 0usize;
    for p in instances(23) {
        let t = Table::new(&p);
        if !filter(&t.profile()) {
            continue;
        }
        hits += 1;
        pairs += check(&p, &t);
    }
    assert!(hits >= 100, "only {hits} instances passed the filter");
    assert!(pairs > 0, "every instance was vacuous");
}

#[test]
fn monos_compose_under_right_dissociativity() {
    filtered_instances(
        |pr| pr.right_dis,
        |p, t| {
            let mut seen = 0;
            for ((f, g), h) in p.comp() {
                let (fi, gi, hi) = (index(t, f), index(t, g), index(t, h));
                if t.monic(fi) && t.monic(gi) {
                    seen += 1;
                    assert!(t.monic(hi), "{f} ⋄ {g} = {h} lost injectivity");
                }
            }
            seen
        },
    );
}

#[test]
fn epis_compose_under_left_dissociativity() {
    filtered_instances(
        |pr| pr.left_dis,
        |p, t| {
            let mut seen = 0;
            for ((f, g), h) in p.comp() {
                let (fi, gi, hi) = (index(t, f), index(t, g), index(t, h));
                if t.epic(fi) && t.epic(gi) {
                    seen += 1;
                    assert!(t.epic(hi), "{f} ⋄ {g} = {h} lost surjectivity");
                }
            }
            seen
        },
    );
}

#[test]
fn strong_associativity_pulls_cancellation_back_through_composites() {
    filtered_instances(
        |pr| pr.strongly,
        |p, t| {
            let mut seen = 0;
            for ((f, g), h) in p.comp() {
                let (fi, gi, hi) = (index(t, f), index(t, g), index(t, h));
                if t.monic(hi) {
                    seen += 1;
                    assert!(t.monic(fi), "{h} monic but its head {f} is not");
                }
                if t.epic(hi) {
                    seen += 1;
                    assert!(t.epic(gi), "{h} epic but its tail {g} is not");
                }
            }
            seen
        },
    );
}

#[test]
fn right_splits_compose_under_left_pre_associativity() {
    filtered_instances(
        |pr| pr.left_pre,
        |p, t| {
            let mut seen = 0;
            for ((f, g), h) in p.comp() {
                let (fi, gi, hi) = (index(t, f), index(t, g), index(t, h));
                if t.right_split(fi) && t.right_split(gi) {
                    seen += 1;
                    assert!(t.right_split(hi), "{f} ⋄ {g} = {h} is not right split");
                }
            }
            seen
        },
    );
}

#[test]
fn left_splits_compose_under_right_pre_associativity() {
    filtered_instances(
        |pr| pr.right_pre,
        |p, t| {
            let mut seen = 0;
            for ((f, g), h) in p.comp() {
                let (fi, gi, hi) = (index(t, f), index(t, g), index(t, h));
                if t.left_split(fi) && t.left_split(gi) {
                    seen += 1;
                    assert!(t.left_split(hi), "{f} ⋄ {g} = {h} is not left split");
                }
            }
            seen
        },
    );
}

fn index(t: &Table, f: &str) -> usize {
    t.names.iter().position(|n| n == f).unwrap()
}

/// How the regular representations of a composite factor through the
/// representations of its parts, under each one-sided assumption.
#[test]
fn representations_of_composites_factor_when_defined() {
    let mut checked = 0usize;
    for p in instances(31) {
        let t = Table::new(&p);
        let pr = t.profile();
        if !(pr.left_pre || pr.right_pre || pr.left_dis || pr.right_dis) {
            continue;
        }
        let n = t.len();
        for ((f, g), fg) in p.comp() {
            let (fi, gi, ci) = (index(&t, f), index(&t, g), index(&t, fg));
            for h in 0..n {
                // Everything composable with the composite on the left
                // reaches the same value through the two steps.
                if pr.right_dis {
                    if let Some(v) = t.at(h, ci) {
                        let step = t.at(h, fi).and_then(|u| t.at(u, gi));
                        assert_eq!(step, Some(v), "{}: chain through {f}", t.names[h]);
                        checked += 1;
                    }
                }
                if pr.left_dis {
                    if let Some(v) = t.at(ci, h) {
                        let step = t.at(gi, h).and_then(|u| t.at(fi, u));
                        assert_eq!(step, Some(v), "{}: chain through {g}", t.names[h]);
                        checked += 1;
                    }
                }
                // And whenever the two steps are defined, the composite
                // accepts the argument directly.
                if pr.left_pre {
                    if let Some(v) = t.at(h, fi).and_then(|u| t.at(u, gi)) {
                        assert_eq!(t.at(h, ci), Some(v), "{} misses {fg}", t.names[h]);
                        checked += 1;
                    }
                }
                if pr.right_pre {
                    if let Some(v) = t.at(gi, h).and_then(|u| t.at(fi, u)) {
                        assert_eq!(t.at(ci, h), Some(v), "{fg} misses {}", t.names[h]);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} factorizations exercised");
}

/// Pre-associativity bounds the two-step domain from one side only: a
/// plot can be pre-associative while an argument composable with the
/// tail never reaches the head.
#[test]
fn pre_associativity_bounds_only_one_side_of_the_domain() {
    let p = plot_from(
        &["*"],
        &[("f", "*", "*"), ("g", "*", "*"), ("h", "*", "*"), ("k", "*", "*")],
        &[("f", "g", "k"), ("g", "h", "k")],
    );
    let profile = p.associativity_profile();
    assert!(profile.right_pre_associative);
    // h is composable with g, but the two-step value f ⋄ (g ⋄ h) is not
    // defined, so the two-step domain is strictly smaller than dom λ(g).
    assert_eq!(p.compose("g", "h"), Some(&"k".to_string()));
    assert_eq!(p.compose("f", "k"), None);
}

#[test]
fn categories_collapse_iso_cancellative_split_and_strongly_invertible() {
    let mut r = rng(47);
    for _ in 0..100 {
        let p = gen_category(&mut r, 2, 2);
        assert!(p.classify().is_category);
        let t = Table::new(&p);
        let report = classify_arrows(&p);
        for (i, f) in t.names.iter().enumerate() {
            let flags = report.get(f).unwrap();
            let literal_iso =
                t.monic(i) && t.epic(i) && t.left_split(i) && t.right_split(i);
            assert_eq!(flags.iso, literal_iso, "{f}");
            assert_eq!(flags.iso, flags.cancellative && flags.split, "{f}");
            assert_eq!(flags.iso, flags.strongly_invertible, "{f}");
            assert_eq!(flags.iso, flags.invertible, "{f}");
            let (_, _, strong) = inverses(&p, f).unwrap();
            assert_eq!(strong.is_some(), flags.iso, "{f} witness");
        }
    }
}

#[test]
fn unitization_round_trips_and_satisfies_the_triangle_identities() {
    let mut r = rng(59);
    for _ in 0..100 {
        let p = gen_plot(&mut r, 5, 10);
        let forced = force_unitize(&p).unwrap();
        assert_eq!(deunitize(&forced), p);
        let conditional = conditional_unitize(&p).unwrap();
        assert_eq!(conditional == p, p.classify().is_unital);
    }
    for _ in 0..50 {
        let p = gen_plot(&mut r, 4, 8);
        let q = gen_unital_plot(&mut r, 4, 8);
        let report = check_unitization_adjunction(&p, &q).unwrap();
        assert!(report.holds, "{:?}", report.failing_equation);
    }
}

fn split_product_id(id: &str) -> (String, String) {
    let mut parts = id.splitn(2, ',');
    (
        parts.next().unwrap().to_string(),
        parts.next().unwrap().to_string(),
    )
}

/// On factors where every arrow has something to compose with (saturated
/// one-object tables and groups), the product mirrors the factors
/// exactly: profile, saturation, unitality, and the mono/epi/iso class of
/// every arrow are all componentwise.
#[test]
fn products_mirror_componentwise_structure() {
    let mut r = rng(61);
    for round in 0..25 {
        let (p, q) = if round % 3 == 0 {
            (cyclic_group(r.gen_range(2..=4)), cyclic_group(r.gen_range(2..=4)))
        } else {
            let (a, b) = (r.gen_range(2..=4), r.gen_range(2..=4));
            (gen_saturated_magma(&mut r, a), gen_saturated_magma(&mut r, b))
        };
        let (prod, projections) = product(&[p.clone(), q.clone()]);

        let pp = Table::new(&p).profile();
        let qp = Table::new(&q).profile();
        let rp = Table::new(&prod).profile();
        assert_eq!(rp.left_pre, pp.left_pre && qp.left_pre);
        assert_eq!(rp.right_pre, pp.right_pre && qp.right_pre);
        assert_eq!(rp.strongly, pp.strongly && qp.strongly);
        assert_eq!(rp.associative, pp.associative && qp.associative);
        assert_eq!(rp.left_dis, pp.left_dis && qp.left_dis);
        assert_eq!(rp.right_dis, pp.right_dis && qp.right_dis);

        let (cp, cq, cr) = (p.classify(), q.classify(), prod.classify());
        assert_eq!(cr.is_saturated, cp.is_saturated && cq.is_saturated);
        assert_eq!(cr.is_unital, cp.is_unital && cq.is_unital);

        let (fp, fq, fr) = (classify_arrows(&p), classify_arrows(&q), classify_arrows(&prod));
        for id in prod.arrows().keys() {
            let (a, b) = split_product_id(id);
            let (fa, fb, fab) = (
                fp.get(&a).unwrap(),
                fq.get(&b).unwrap(),
                fr.get(id).unwrap(),
            );
            assert_eq!(fab.monic, fa.monic && fb.monic, "{id}");
            assert_eq!(fab.epic, fa.epic && fb.epic, "{id}");
            assert_eq!(fab.iso, fa.iso && fb.iso, "{id}");
        }
        for (projection, factor) in projections.iter().zip([&p, &q]) {
            assert_eq!(projection.target(), factor);
        }
    }

    // On arbitrary sparse factors only the forward direction survives:
    // componentwise structure is inherited, the converse can fail
    // vacuously.
    for _ in 0..25 {
        let (p, q) = (gen_plot(&mut r, 3, 5), gen_plot(&mut r, 3, 5));
        let (prod, _) = product(&[p.clone(), q.clone()]);
        let pp = Table::new(&p).profile();
        let qp = Table::new(&q).profile();
        let rp = Table::new(&prod).profile();
        for (factors, whole) in [
            (pp.left_pre && qp.left_pre, rp.left_pre),
            (pp.right_pre && qp.right_pre, rp.right_pre),
            (pp.strongly && qp.strongly, rp.strongly),
            (pp.left_dis && qp.left_dis, rp.left_dis),
            (pp.right_dis && qp.right_dis, rp.right_dis),
        ] {
            assert!(!factors || whole);
        }
        let (fp, fq) = (classify_arrows(&p), classify_arrows(&q));
        let fr = classify_arrows(&prod);
        for id in prod.arrows().keys() {
            let (a, b) = split_product_id(id);
            let (fa, fb, fab) = (
                fp.get(&a).unwrap(),
                fq.get(&b).unwrap(),
                fr.get(id).unwrap(),
            );
            assert!(!(fa.monic && fb.monic) || fab.monic, "{id}");
            assert!(!(fa.epic && fb.epic) || fab.epic, "{id}");
            assert!(!(fa.iso && fb.iso) || fab.iso, "{id}");
        }
    }
}

/// Coproduct components never interact, so every structural question
/// reduces exactly to the factors, with no side conditions at all.
#[test]
fn coproducts_inherit_structure_exactly() {
    let mut r = rng(67);
    for _ in 0..40 {
        let (p, q) = (gen_plot(&mut r, 3, 6), gen_plot(&mut r, 3, 6));
        let (cop, injections) = coproduct(&[p.clone(), q.clone()]);

        let pp = Table::new(&p).profile();
        let qp = Table::new(&q).profile();
        let kp = Table::new(&cop).profile();
        assert_eq!(kp.left_pre, pp.left_pre && qp.left_pre);
        assert_eq!(kp.right_pre, pp.right_pre && qp.right_pre);
        assert_eq!(kp.strongly, pp.strongly && qp.strongly);
        assert_eq!(kp.associative, pp.associative && qp.associative);
        assert_eq!(kp.left_dis, pp.left_dis && qp.left_dis);
        assert_eq!(kp.right_dis, pp.right_dis && qp.right_dis);

        let (cp, cq, ck) = (p.classify(), q.classify(), cop.classify());
        assert_eq!(ck.is_saturated, cp.is_saturated && cq.is_saturated);
        assert_eq!(ck.is_unital, cp.is_unital && cq.is_unital);

        let reports = [classify_arrows(&p), classify_arrows(&q)];
        let fk = classify_arrows(&cop);
        for id in cop.arrows().keys() {
            let (tag, rest) = id.split_once(':').unwrap();
            let component: usize = tag.parse().unwrap();
            let original = reports[component].get(rest).unwrap();
            let tagged = fk.get(id).unwrap();
            for (name, value) in original.flags() {
                assert_eq!(Some(value), tagged.flag(name), "{id}: {name}");
            }
        }
        for (injection, factor) in injections.iter().zip([&p, &q]) {
            assert_eq!(injection.source(), factor);
        }
    }
}

#[test]
fn pairing_into_products_is_unique() {
    let mut r = rng(71);
    let mut verified = 0;
    for _ in 0..120 {
        let q = gen_plot(&mut r, 2, 3);
        let p1 = gen_plot(&mut r, 2, 3);
        let p2 = gen_plot(&mut r, 2, 3);
        let (Some(f1), Some(f2)) = (
            gen_punctor(&mut r, &q, &p1, 200_000),
            gen_punctor(&mut r, &q, &p2, 200_000),
        ) else {
            continue;
        };
        let paired = pair_into_product(&[f1.clone(), f2.clone()]).unwrap();
        let (prod, projections) = product(&[p1, p2]);
        assert_eq!(paired.target(), &prod);
        assert_eq!(compose_punctors(&paired, &projections[0]).unwrap(), f1);
        assert_eq!(compose_punctors(&paired, &projections[1]).unwrap(), f2);

        let matching: Vec<_> = enumerate_punctors(&q, &prod, 1_000_000)
            .unwrap()
            .into_iter()
            .filter(|cand| {
                compose_punctors(cand, &projections[0]).unwrap() == f1
                    && compose_punctors(cand, &projections[1]).unwrap() == f2
            })
            .collect();
        assert_eq!(matching, vec![paired]);
        verified += 1;
        if verified >= 20 {
            return;
        }
    }
    panic!("only {verified} pairings were exercised");
}

#[test]
fn copairing_out_of_coproducts_is_unique() {
    let mut r = rng(73);
    let mut verified = 0;
    for _ in 0..120 {
        let p1 = gen_plot(&mut r, 2, 3);
        let p2 = gen_plot(&mut r, 2, 3);
        let q = gen_plot(&mut r, 2, 3);
        let (Some(g1), Some(g2)) = (
            gen_punctor(&mut r, &p1, &q, 200_000),
            gen_punctor(&mut r, &p2, &q, 200_000),
        ) else {
            continue;
        };
        let copaired = copair_from_coproduct(&[g1.clone(), g2.clone()]).unwrap();
        let (cop, injections) = coproduct(&[p1, p2]);
        assert_eq!(copaired.source(), &cop);
        assert_eq!(compose_punctors(&injections[0], &copaired).unwrap(), g1);
        assert_eq!(compose_punctors(&injections[1], &copaired).unwrap(), g2);

        let matching: Vec<_> = enumerate_punctors(&cop, &q, 1_000_000)
            .unwrap()
            .into_iter()
            .filter(|cand| {
                compose_punctors(&injections[0], cand).unwrap() == g1
                    && compose_punctors(&injections[1], cand).unwrap() == g2
            })
            .collect();
        assert_eq!(matching, vec![copaired]);
        verified += 1;
        if verified >= 20 {
            return;
        }
    }
    panic!("only {verified} copairings were exercised");
}

fn touches(p: &Plot, a: &str, b: &str) -> bool {
    let (sa, ta) = p.endpoints(a).unwrap();
    let (sb, tb) = p.endpoints(b).unwrap();
    sa == sb || sa == tb || ta == sb || ta == tb
}

fn permutations(items: &[String]) -> Vec<Vec<String>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

/// The definition, transcribed: a nonempty tuple inside the class is a
/// connection when it is a single arrow, or some reordering of its prefix
/// is itself a connection that starts where the tuple starts and ends
/// touching the final arrow.
fn literal_connection(p: &Plot, m: &BTreeSet<String>, tuple: &[String]) -> bool {
    if tuple.is_empty() || tuple.iter().any(|f| !m.contains(f)) {
        return false;
    }
    if tuple.len() == 1 {
        return true;
    }
    let last = &tuple[tuple.len() - 1];
    permutations(&tuple[..tuple.len() - 1]).into_iter().any(|perm| {
        p.src(&perm[0]) == p.src(&tuple[0])
            && touches(p, &perm[perm.len() - 1], last)
            && literal_connection(p, m, &perm)
    })
}

fn literal_path(p: &Plot, m: &BTreeSet<String>, tuple: &[String]) -> bool {
    !tuple.is_empty()
        && tuple.iter().all(|f| m.contains(f))
        && tuple.windows(2).all(|w| p.tgt(&w[0]) == p.src(&w[1]))
}

#[test]
fn connection_search_matches_the_literal_recursion() {
    let mut r = rng(83);
    let mut plots = vec![cayley_fixture()];
    for _ in 0..25 {
        plots.push(gen_plot(&mut r, 4, 5));
    }
    for p in plots {
        let all: Vec<String> = p.arrows().keys().cloned().collect();
        if all.is_empty() {
            continue;
        }
        let mut classes: Vec<BTreeSet<String>> = vec![all.iter().cloned().collect()];
        for _ in 0..2 {
            classes.push(
                all.iter()
                    .filter(|_| r.gen_bool(0.5))
                    .cloned()
                    .collect(),
            );
        }
        let mut tuples: Vec<Vec<String>> = all.iter().map(|f| vec![f.clone()]).collect();
        let mut frontier = tuples.clone();
        for _ in 0..3 {
            let mut next = Vec::new();
            for t in &frontier {
                for f in &all {
                    let mut longer = t.clone();
                    longer.push(f.clone());
                    next.push(longer);
                }
            }
            tuples.extend(next.iter().cloned());
            frontier = next;
        }
        for m in &classes {
            for t in &tuples {
                assert_eq!(
                    is_m_connection(&p, m, t).unwrap(),
                    literal_connection(&p, m, t),
                    "connection {:?} over {:?}",
                    t,
                    m
                );
                assert_eq!(
                    is_m_path(&p, m, t).unwrap(),
                    literal_path(&p, m, t),
                    "path {:?} over {:?}",
                    t,
                    m
                );
            }
        }
    }
}

struct Dsu {
    parent: BTreeMap<String, String>,
}

impl Dsu {
    fn new(objects: &BTreeSet<String>) -> Dsu {
        Dsu {
            parent: objects.iter().map(|o| (o.clone(), o.clone())).collect(),
        }
    }

    fn find(&mut self, x: &str) -> String {
        let p = self.parent[x].clone();
        if p == x {
            return p;
        }
        let root = self.find(&p);
        self.parent.insert(x.to_string(), root.clone());
        root
    }

    fn union(&mut self, a: &str, b: &str) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent.insert(ra, rb);
    }
}

#[test]
fn connectivity_matches_a_union_find_oracle() {
    let mut r = rng(89);
    for _ in 0..200 {
        let p = gen_plot(&mut r, 8, 12);
        let m: BTreeSet<String> = p
            .arrows()
            .keys()
            .filter(|_| r.gen_bool(0.6))
            .cloned()
            .collect();
        let mut dsu = Dsu::new(p.objects());
        let mut incident: BTreeSet<String> = BTreeSet::new();
        for f in &m {
            let (s, t) = p.endpoints(f).unwrap();
            dsu.union(s, t);
            incident.insert(s.clone());
            incident.insert(t.clone());
        }
        let objects: Vec<String> = p.objects().iter().cloned().collect();
        for a in &objects {
            for b in &objects {
                let expected = incident.contains(a)
                    && incident.contains(b)
                    && dsu.find(a) == dsu.find(b);
                assert_eq!(m_connected(&p, &m, a, b).unwrap(), expected, "{a} ~ {b}");
                assert_eq!(
                    m_equivalent(&p, &m, a, b).unwrap(),
                    a == b || expected,
                    "{a} ≃ {b}"
                );
            }
        }

        let mut expected_classes: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for a in &objects {
            let key = if incident.contains(a) {
                dsu.find(a)
            } else {
                a.clone()
            };
            expected_classes.entry(key).or_default().insert(a.clone());
        }
        let mut expected: Vec<BTreeSet<String>> = expected_classes.into_values().collect();
        expected.sort_by(|x, y| x.iter().next().cmp(&y.iter().next()));
        let actual: Vec<BTreeSet<String>> = m_components(&p, &m)
            .unwrap()
            .into_iter()
            .map(|(class, _)| class)
            .collect();
        assert_eq!(actual, expected);
    }
}
