//! Subplot predicates and constructions.
//!
//! A plot `Q` is a subplot of `P` when its objects and arrows are contained
//! in `P`'s, its endpoint maps agree with `P`'s, and its composition table
//! is a subset of `P`'s. The table need not be the maximal restriction: the
//! underlying quiver of `P` (same carriers, empty table) is a subplot.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::plot::{ArrId, ObjId, Plot, PlotError};

/// Outcome of a subplot check, with the derived adjectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubplotReport {
    pub is_subplot: bool,
    /// Same object set as the parent.
    pub is_wide: bool,
    /// Every parent arrow between child objects is a child arrow.
    pub is_full: bool,
    /// Contains the parent's local identity at every child object that is
    /// unital in the parent.
    pub is_identitive: bool,
    /// Subplot and not equal to the parent.
    pub is_proper: bool,
    /// Human-readable reason when `is_subplot` is false.
    pub violation: Option<SubplotViolation>,
}

/// Why a plot fails to be a subplot of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubplotViolation {
    ObjectNotInParent(ObjId),
    ArrowNotInParent(ArrId),
    EndpointDisagreement(ArrId),
    CompositeNotInParent(ArrId, ArrId),
}

/// Checks whether `q` is a subplot of `p` and computes the adjectives.
///
/// The adjectives are only meaningful when `is_subplot` is true; they are
/// reported as false otherwise.
pub fn is_subplot(q: &Plot, p: &Plot) -> SubplotReport {
    let mut violation = None;
    for o in q.objects() {
        if !p.has_object(o) {
            violation = Some(SubplotViolation::ObjectNotInParent(o.clone()));
            break;
        }
    }
    if violation.is_none() {
        for (id, (s, t)) in q.arrows() {
            match p.endpoints(id) {
                None => {
                    violation = Some(SubplotViolation::ArrowNotInParent(id.clone()));
                    break;
                }
                Some((ps, pt)) if ps != s || pt != t => {
                    violation = Some(SubplotViolation::EndpointDisagreement(id.clone()));
                    break;
                }
                _ => {}
            }
        }
    }
    if violation.is_none() {
        for ((f, g), h) in q.comp() {
            if p.compose(f, g) != Some(h) {
                violation = Some(SubplotViolation::CompositeNotInParent(f.clone(), g.clone()));
                break;
            }
        }
    }
    if let Some(v) = violation {
        return SubplotReport {
            is_subplot: false,
            is_wide: false,
            is_full: false,
            is_identitive: false,
            is_proper: false,
            violation: Some(v),
        };
    }

    let is_wide = q.objects() == p.objects();
    let is_full = p
        .arrows()
        .iter()
        .all(|(id, (s, t))| !(q.has_object(s) && q.has_object(t)) || q.has_arrow(id));
    let parent_ids = p.compute_identities();
    let is_identitive = q
        .objects()
        .iter()
        .all(|a| parent_ids.get(a).map_or(true, |e| q.has_arrow(e)));
    SubplotReport {
        is_subplot: true,
        is_wide,
        is_full,
        is_identitive,
        is_proper: q != p,
        violation: None,
    }
}

/// How to cut a subplot out of a plot from chosen objects and arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Close the chosen arrows under composition; keep the full composition
    /// table on the closure. The smallest subplot containing the choice that
    /// is compositionally closed.
    Smallest,
    /// `Smallest`, after adding the parent's local identities at the
    /// endpoints of the chosen arrows (where those exist).
    Identitive,
    /// No closure: keep exactly the chosen arrows, with every composition
    /// whose three participants survive. Contained in `Smallest`, equal to
    /// it exactly when the chosen arrow set is compositive.
    Relative,
    /// Ignore the chosen objects; take the endpoints of the chosen arrows
    /// and close as in `Smallest`.
    Hom,
    /// Ignore the chosen arrows; take every parent arrow running between
    /// chosen objects and close as in `Smallest`.
    Obj,
    /// Keep all parent objects and close the chosen arrows as in `Smallest`.
    Wide,
    /// Take the chosen objects and all parent arrows, closed as in
    /// `Smallest`.
    Full,
}

/// Cuts a subplot out of `p` generated by object and arrow choices.
///
/// Ids not present in `p` are ignored (intersection semantics), so callers
/// may pass classes computed elsewhere without trimming them first.
pub fn generated_subplot(
    p: &Plot,
    objs: &BTreeSet<ObjId>,
    arrs: &BTreeSet<ArrId>,
    mode: GenMode,
) -> Plot {
    let chosen_objs: BTreeSet<ObjId> = objs.iter().filter(|o| p.has_object(o)).cloned().collect();
    let chosen_arrs: BTreeSet<ArrId> = arrs.iter().filter(|a| p.has_arrow(a)).cloned().collect();
    match mode {
        GenMode::Smallest => assemble(p, &chosen_objs, &closure(p, &chosen_arrs), true),
        GenMode::Identitive => {
            let ids = p.compute_identities();
            let mut seed = chosen_arrs.clone();
            for f in &chosen_arrs {
                let (s, t) = p.endpoints(f).expect("filtered against p");
                for end in [s, t] {
                    if let Some(e) = ids.get(end) {
                        seed.insert(e.clone());
                    }
                }
            }
            assemble(p, &chosen_objs, &closure(p, &seed), true)
        }
        GenMode::Relative => assemble(p, &chosen_objs, &chosen_arrs, false),
        GenMode::Hom => {
            let mut ends = BTreeSet::new();
            for f in &chosen_arrs {
                let (s, t) = p.endpoints(f).expect("filtered against p");
                ends.insert(s.clone());
                ends.insert(t.clone());
            }
            assemble(p, &ends, &closure(p, &chosen_arrs), true)
        }
        GenMode::Obj => {
            let between: BTreeSet<ArrId> = p
                .arrows()
                .iter()
                .filter(|(_, (s, t))| chosen_objs.contains(s) && chosen_objs.contains(t))
                .map(|(id, _)| id.clone())
                .collect();
            assemble(p, &chosen_objs, &closure(p, &between), true)
        }
        GenMode::Wide => assemble(p, p.objects(), &closure(p, &chosen_arrs), true),
        GenMode::Full => {
            let all: BTreeSet<ArrId> = p.arrows().keys().cloned().collect();
            assemble(p, &chosen_objs, &closure(p, &all), true)
        }
    }
}

/// Least superset of `seed` closed under defined composition in `p`.
fn closure(p: &Plot, seed: &BTreeSet<ArrId>) -> BTreeSet<ArrId> {
    let mut set = seed.clone();
    let mut grew = true;
    while grew {
        grew = false;
        let snapshot: Vec<ArrId> = set.iter().cloned().collect();
        for f in &snapshot {
            for g in &snapshot {
                if let Some(h) = p.compose(f, g) {
                    if set.insert(h.clone()) {
                        grew = true;
                    }
                }
            }
        }
    }
    set
}

/// Builds the subplot of `p` on the given carriers. With `closed` the arrow
/// set is assumed compositive and the full table restriction is taken;
/// otherwise composites falling outside the arrow set are dropped.
fn assemble(p: &Plot, objs: &BTreeSet<ObjId>, arrs: &BTreeSet<ArrId>, closed: bool) -> Plot {
    let mut objects = objs.clone();
    let mut arrows = BTreeMap::new();
    for f in arrs {
        let (s, t) = p.endpoints(f).expect("arrow filtered against p");
        objects.insert(s.clone());
        objects.insert(t.clone());
        arrows.insert(f.clone(), (s.clone(), t.clone()));
    }
    let mut comp = BTreeMap::new();
    for ((f, g), h) in p.comp() {
        if arrs.contains(f) && arrs.contains(g) && (closed || arrs.contains(h)) {
            debug_assert!(arrs.contains(h), "closure must contain all composites");
            comp.insert((f.clone(), g.clone()), h.clone());
        }
    }
    Plot::from_parts(objects, arrows, comp).expect("subplot of a valid plot is valid")
}

/// The subplot induced by a binary relation on arrows: the arrows are those
/// occurring in some pair (either side), the objects their endpoints, and
/// the table is the relative restriction. Epic by construction.
pub fn restrict_to_relation(
    p: &Plot,
    relation: &BTreeSet<(ArrId, ArrId)>,
) -> Result<Plot, PlotError> {
    let mut arrs = BTreeSet::new();
    for (f, g) in relation {
        for id in [f, g] {
            if !p.has_arrow(id) {
                return Err(PlotError::UnknownArrow(id.clone()));
            }
            arrs.insert(id.clone());
        }
    }
    Ok(assemble(p, &BTreeSet::new(), &arrs, false))
}

/// Whether `class` is closed under defined composition; on failure returns
/// the first violating pair.
pub fn is_compositive(
    p: &Plot,
    class: &BTreeSet<ArrId>,
) -> Result<(bool, Option<(ArrId, ArrId)>), PlotError> {
    for a in class {
        if !p.has_arrow(a) {
            return Err(PlotError::UnknownArrow(a.clone()));
        }
    }
    for f in class {
        for g in class {
            if let Some(h) = p.compose(f, g) {
                if !class.contains(h) {
                    return Ok((false, Some((f.clone(), g.clone()))));
                }
            }
        }
    }
    Ok((true, None))
}

/// Same carriers, empty composition table: a fully wide subplot.
pub fn underlying_quiver(p: &Plot) -> Plot {
    Plot::from_parts(p.objects().clone(), p.arrows().clone(), BTreeMap::new())
        .expect("carriers of a valid plot are valid")
}

/// The underlying graph: each arrow with its unordered endpoint pair
/// (sorted; a loop repeats its object).
pub fn underlying_graph(p: &Plot) -> Vec<(ArrId, (ObjId, ObjId))> {
    p.arrows()
        .iter()
        .map(|(id, (s, t))| {
            let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
            (id.clone(), (lo.clone(), hi.clone()))
        })
        .collect()
}
