//! Shared fixtures and seeded generators for the test suites.
//!
//! Everything here is deterministic: generators take a [`ChaCha8Rng`]
//! that the caller seeds, fixtures are fixed data.

use std::collections::{BTreeMap, BTreeSet};

use plotkit_core::punctor::{enumerate_punctors, Punctor};
use plotkit_core::Plot;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Builds a plot from literal parts, panicking on invalid input. Arrows
/// are `(id, src, tgt)`, composition entries are `(f, g, h)`.
pub fn plot_from(
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    comp: &[(&str, &str, &str)],
) -> Plot {
    let objects: BTreeSet<String> = objects.iter().map(|s| s.to_string()).collect();
    let arrows: BTreeMap<String, (String, String)> = arrows
        .iter()
        .map(|(f, s, t)| (f.to_string(), (s.to_string(), t.to_string())))
        .collect();
    let comp: BTreeMap<(String, String), String> = comp
        .iter()
        .map(|(f, g, h)| ((f.to_string(), g.to_string()), h.to_string()))
        .collect();
    match Plot::from_parts(objects, arrows, comp) {
        Ok(p) => p,
        Err(violations) => panic!("fixture is not a plot: {violations:?}"),
    }
}

/// The cyclic group of order `n` as a one-object category: arrows are
/// `"0"` to `"n-1"`, composition is addition mod `n`, `"0"` the identity.
pub fn cyclic_group(n: usize) -> Plot {
    assert!(n > 0);
    let objects: BTreeSet<String> = ["*".to_string()].into();
    let mut arrows = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for i in 0..n {
        arrows.insert(i.to_string(), ("*".to_string(), "*".to_string()));
        for j in 0..n {
            comp.insert((i.to_string(), j.to_string()), ((i + j) % n).to_string());
        }
    }
    Plot::from_parts(objects, arrows, comp).expect("cyclic groups are plots")
}

/// The left-zero magma on `n` loops: every composite is its left factor.
/// Saturated; every arrow is monic, none is epic for `n > 1`.
pub fn left_zero_magma(n: usize) -> Plot {
    assert!(n > 0);
    let objects: BTreeSet<String> = ["*".to_string()].into();
    let mut arrows = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for i in 0..n {
        arrows.insert(format!("a{i}"), ("*".to_string(), "*".to_string()));
        for j in 0..n {
            comp.insert((format!("a{i}"), format!("a{j}")), format!("a{i}"));
        }
    }
    Plot::from_parts(objects, arrows, comp).expect("left-zero magmas are plots")
}

/// A fixed three-loop saturated plot with a hand-computed multiplication
/// table, used to freeze classification values. Row f, column g reads
/// off f then g.
///
/// ```text
///       g=0  g=1  g=2
/// f=0    1    1    0
/// f=1    1    0    2
/// f=2    1    2    1
/// ```
pub fn cayley_fixture() -> Plot {
    let table = [[1, 1, 0], [1, 0, 2], [1, 2, 1]];
    let objects: BTreeSet<String> = ["*".to_string()].into();
    let mut arrows = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for f in 0..3usize {
        arrows.insert(f.to_string(), ("*".to_string(), "*".to_string()));
        for g in 0..3usize {
            comp.insert((f.to_string(), g.to_string()), table[f][g].to_string());
        }
    }
    Plot::from_parts(objects, arrows, comp).expect("the table is a plot")
}

/// The one-object, one-identity category.
pub fn terminal_category() -> Plot {
    plot_from(&["*"], &[("1", "*", "*")], &[("1", "1", "1")])
}

/// Two objects, no arrows.
pub fn two_object_discrete() -> Plot {
    plot_from(&["X", "Y"], &[], &[])
}

/// A non-unital plot shaped like a binary product diagram with two
/// competing apexes: `p1, p2` out of `P`, `q1, q2` out of `Q`, and a
/// mediating `m` with `m ⋄ p1 = q1`, `m ⋄ p2 = q2`.
pub fn binary_product_fixture() -> Plot {
    plot_from(
        &["A", "B", "P", "Q"],
        &[
            ("p1", "P", "A"),
            ("p2", "P", "B"),
            ("q1", "Q", "A"),
            ("q2", "Q", "B"),
            ("m", "Q", "P"),
        ],
        &[("m", "p1", "q1"), ("m", "p2", "q2")],
    )
}

/// A random quiver: up to `max_objects` objects and `max_arrows` arrows
/// with uniformly random endpoints, no composition.
pub fn gen_quiver(rng: &mut ChaCha8Rng, max_objects: usize, max_arrows: usize) -> Plot {
    let n_obj = rng.gen_range(1..=max_objects.max(1));
    let objects: BTreeSet<String> = (0..n_obj).map(|i| format!("O{i}")).collect();
    let names: Vec<String> = objects.iter().cloned().collect();
    let n_arr = rng.gen_range(0..=max_arrows);
    let arrows: BTreeMap<String, (String, String)> = (0..n_arr)
        .map(|i| {
            let s = names[rng.gen_range(0..names.len())].clone();
            let t = names[rng.gen_range(0..names.len())].clone();
            (format!("f{i}"), (s, t))
        })
        .collect();
    Plot::from_parts(objects, arrows, BTreeMap::new()).expect("quivers are plots")
}

/// A random plot: a random quiver plus a composition table filling a
/// random subset of the composable pairs, each with a random admissible
/// value. Pairs with no admissible value stay undefined.
pub fn gen_plot(rng: &mut ChaCha8Rng, max_objects: usize, max_arrows: usize) -> Plot {
    let quiver = gen_quiver(rng, max_objects, max_arrows);
    let mut comp = BTreeMap::new();
    for (f, g) in quiver.pullback_pairs() {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let s = quiver.src(&f).expect("known arrow").clone();
        let t = quiver.tgt(&g).expect("known arrow").clone();
        let pool: Vec<String> = quiver
            .hom(Some(s.as_str()), Some(t.as_str()))
            .expect("valid objects")
            .into_iter()
            .collect();
        if pool.is_empty() {
            continue;
        }
        let h = pool[rng.gen_range(0..pool.len())].clone();
        comp.insert((f, g), h);
    }
    Plot::from_parts(quiver.objects().clone(), quiver.arrows().clone(), comp)
        .expect("admissible values keep the axioms")
}

/// A random saturated one-object plot: a total random multiplication
/// table on `n_arrows` loops.
pub fn gen_saturated_magma(rng: &mut ChaCha8Rng, n_arrows: usize) -> Plot {
    assert!(n_arrows > 0);
    let objects: BTreeSet<String> = ["*".to_string()].into();
    let mut arrows = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for i in 0..n_arrows {
        arrows.insert(format!("a{i}"), ("*".to_string(), "*".to_string()));
    }
    for i in 0..n_arrows {
        for j in 0..n_arrows {
            let k = rng.gen_range(0..n_arrows);
            comp.insert((format!("a{i}"), format!("a{j}")), format!("a{k}"));
        }
    }
    Plot::from_parts(objects, arrows, comp).expect("total tables on loops are plots")
}

/// A random plot that is guaranteed unital: a random plot with a fresh
/// identity adjoined at every object.
pub fn gen_unital_plot(rng: &mut ChaCha8Rng, max_objects: usize, max_arrows: usize) -> Plot {
    let p = gen_plot(rng, max_objects, max_arrows);
    plotkit_core::construct::force_unitize(&p).expect("generated ids never start with 1@")
}

/// A random small category: the free category on a random quiver,
/// truncated at path length 3 by an absorbing top arrow per ordered pair
/// of objects. Identities are the empty paths.
pub fn gen_category(rng: &mut ChaCha8Rng, max_objects: usize, max_arrows: usize) -> Plot {
    let quiver = gen_quiver(rng, max_objects, max_arrows);
    let names: Vec<String> = quiver.objects().iter().cloned().collect();

    // Enumerate paths of length 0..=3; the id of a path is its joined
    // edge list, "id@A" for the empty path at A, "top@A>B" for the
    // absorber.
    let mut paths: Vec<(String, String, String, usize)> = Vec::new();
    for a in &names {
        paths.push((format!("id@{a}"), a.clone(), a.clone(), 0));
    }
    let mut frontier: Vec<(Vec<String>, String, String)> = quiver
        .arrows()
        .iter()
        .map(|(f, (s, t))| (vec![f.clone()], s.clone(), t.clone()))
        .collect();
    for len in 1..=3usize {
        for (edges, s, t) in &frontier {
            paths.push((edges.join("."), s.clone(), t.clone(), len));
        }
        if len == 3 {
            break;
        }
        let mut next = Vec::new();
        for (edges, s, t) in &frontier {
            for (f, (fs, ft)) in quiver.arrows() {
                if fs == t {
                    let mut e = edges.clone();
                    e.push(f.clone());
                    next.push((e, s.clone(), ft.clone()));
                }
            }
        }
        frontier = next;
    }
    for a in &names {
        for b in &names {
            paths.push((format!("top@{a}>{b}"), a.clone(), b.clone(), 4));
        }
    }

    let objects: BTreeSet<String> = quiver.objects().clone();
    let arrows: BTreeMap<String, (String, String)> = paths
        .iter()
        .map(|(id, s, t, _)| (id.clone(), (s.clone(), t.clone())))
        .collect();
    let mut comp = BTreeMap::new();
    let by_id: BTreeMap<String, (String, String, usize)> = paths
        .iter()
        .map(|(id, s, t, len)| (id.clone(), (s.clone(), t.clone(), *len)))
        .collect();
    for (x, (xs, xt, xl)) in &by_id {
        for (y, (ys, yt, yl)) in &by_id {
            if xt != ys {
                continue;
            }
            let h = if *xl == 0 {
                y.clone()
            } else if *yl == 0 {
                x.clone()
            } else if xl + yl <= 3 && *xl <= 3 && *yl <= 3 {
                format!("{x}.{y}")
            } else {
                format!("top@{xs}>{yt}")
            };
            debug_assert!(arrows.contains_key(&h), "missing composite {h}");
            comp.insert((x.clone(), y.clone()), h);
        }
    }
    let free =
        Plot::from_parts(objects, arrows, comp).expect("truncated path categories are plots");

    // Half the time, thicken with a one-object group.
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=3);
        let (prod, _) = plotkit_core::construct::product(&[free, cyclic_group(n)]);
        prod
    } else {
        free
    }
}

/// A uniformly chosen valid punctor from `p` to `q`, or `None` when there
/// is none or the search space exceeds the cap.
pub fn gen_punctor(rng: &mut ChaCha8Rng, p: &Plot, q: &Plot, cap: u128) -> Option<Punctor> {
    let all = enumerate_punctors(p, q, cap).ok()?;
    if all.is_empty() {
        return None;
    }
    let i = rng.gen_range(0..all.len());
    Some(all[i].clone())
}
