//! Plot constructions: adjoining and removing identities, the adjunction
//! between plots and unital plots, finite products and coproducts with
//! their pairing punctors, augmentations by an indexed operation, natural
//! transformations, and the plot of punctors between two plots.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::plot::{join_ids, ArrId, ObjId, Plot, PlotError};
use crate::punctor::{
    compose_punctors, enumerate_punctors, identity_punctor, Punctor, PunctorError,
};

/// A defect in a proposed natural transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NtViolation {
    /// No component is given for a source object.
    MissingComponent(ObjId),
    /// A component is keyed by something that is not a source object.
    UnknownComponentObject(ObjId),
    /// The component is not an arrow of the unitized target.
    UnknownComponentArrow { object: ObjId, component: ArrId },
    /// The component does not run between the two image objects.
    ComponentEndpoints { object: ObjId, component: ArrId },
    /// For the arrow, one of the two composites is undefined in the
    /// unitized target, or they disagree.
    Naturality { arrow: ArrId },
}

impl fmt::Display for NtViolation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NtViolation::MissingComponent(a) => write!(w, "no component at object {a:?}"),
            NtViolation::UnknownComponentObject(a) => {
                write!(w, "component keyed by {a:?}, which is not a source object")
            }
            NtViolation::UnknownComponentArrow { object, component } => {
                write!(
                    w,
                    "component {component:?} at {object:?} is not an arrow of the unitized target"
                )
            }
            NtViolation::ComponentEndpoints { object, component } => {
                write!(
                    w,
                    "component {component:?} at {object:?} does not run between the images"
                )
            }
            NtViolation::Naturality { arrow } => {
                write!(w, "components do not commute over arrow {arrow:?}")
            }
        }
    }
}

impl core::error::Error for NtViolation {}

/// Error raised by the construction operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    /// The operation requires a unital plot.
    NotUnital,
    /// An adjoined identity would be named like an existing arrow.
    FreshIdCollision(ArrId),
    /// Pairing or copairing got punctors that do not share the required
    /// endpoint, or no punctors at all.
    FactorMismatch,
    /// The indexed operation mentions an index outside the index set.
    UnknownIndex(String),
    /// The punctors of a natural transformation must share source and
    /// target.
    NotParallel,
    /// The proposed components fail the transformation laws.
    InvalidNt(Vec<NtViolation>),
    /// An enumeration would exceed the configured search cap.
    Overflow {
        required: u128,
        cap: u128,
    },
    Plot(PlotError),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::NotUnital => w.write_str("the plot is not unital"),
            ConstructError::FreshIdCollision(id) => {
                write!(w, "an arrow named {id:?} already exists, so the adjoined identity cannot be named")
            }
            ConstructError::FactorMismatch => {
                w.write_str("the punctors do not share the endpoint required for pairing")
            }
            ConstructError::UnknownIndex(i) => {
                write!(w, "index {i:?} is not a member of the index set")
            }
            ConstructError::NotParallel => w.write_str("the punctors are not parallel"),
            ConstructError::InvalidNt(violations) => {
                write!(
                    w,
                    "not a natural transformation ({} violations)",
                    violations.len()
                )
            }
            ConstructError::Overflow { required, cap } => {
                write!(
                    w,
                    "search space of {required} candidates exceeds the cap of {cap}"
                )
            }
            ConstructError::Plot(e) => e.fmt(w),
        }
    }
}

impl core::error::Error for ConstructError {}

impl From<PlotError> for ConstructError {
    fn from(e: PlotError) -> ConstructError {
        ConstructError::Plot(e)
    }
}

impl From<PunctorError> for ConstructError {
    fn from(e: PunctorError) -> ConstructError {
        match e {
            PunctorError::Overflow { required, cap } => ConstructError::Overflow { required, cap },
            PunctorError::Plot(p) => ConstructError::Plot(p),
            _ => ConstructError::FactorMismatch,
        }
    }
}

/// The preferred name for an adjoined identity at `a`.
fn fresh_identity_name(a: &str) -> ArrId {
    format!("1@{a}")
}

/// A collision-free name for an adjoined identity at `a`: the preferred
/// name with as many extra `@` as needed.
fn escalated_identity_name(p: &Plot, a: &str) -> ArrId {
    let mut marker = String::from("@");
    loop {
        let candidate = format!("1{marker}{a}");
        if !p.has_arrow(&candidate) {
            return candidate;
        }
        marker.push('@');
    }
}

/// Builds the forced unitization with the given fresh names: one new loop
/// per object, absorbing on both sides, composing with itself to itself.
/// Existing local identities lose their identity status because they do
/// not act on the new loops.
fn unitized_with(p: &Plot, fresh: &BTreeMap<ObjId, ArrId>) -> Plot {
    let mut arrows = p.arrows().clone();
    let mut comp = p.comp().clone();
    for (a, e) in fresh {
        arrows.insert(e.clone(), (a.clone(), a.clone()));
    }
    for (a, e) in fresh {
        comp.insert((e.clone(), e.clone()), e.clone());
        for (f, (s, t)) in p.arrows() {
            if s == a {
                comp.insert((e.clone(), f.clone()), f.clone());
            }
            if t == a {
                comp.insert((f.clone(), e.clone()), f.clone());
            }
        }
    }
    Plot::from_parts(p.objects().clone(), arrows, comp)
        .expect("unitizations satisfy the axioms by construction")
}

fn escalated_fresh_map(p: &Plot) -> BTreeMap<ObjId, ArrId> {
    p.objects()
        .iter()
        .map(|a| (a.clone(), escalated_identity_name(p, a)))
        .collect()
}

fn strict_fresh_map(p: &Plot) -> Result<BTreeMap<ObjId, ArrId>, ConstructError> {
    let mut fresh = BTreeMap::new();
    for a in p.objects() {
        let name = fresh_identity_name(a);
        if p.has_arrow(&name) {
            return Err(ConstructError::FreshIdCollision(name));
        }
        fresh.insert(a.clone(), name);
    }
    Ok(fresh)
}

/// Adjoins a fresh identity loop at every object, whether or not a local
/// identity is already present; existing identities are demoted to plain
/// loops. Fresh loops are named `1@<object>`; a clash with an existing
/// arrow id is an error.
pub fn force_unitize(p: &Plot) -> Result<Plot, ConstructError> {
    Ok(unitized_with(p, &strict_fresh_map(p)?))
}

/// Adjoins a fresh identity loop only at objects without one: the plot
/// itself when it is already unital. Fresh loops are named `1@<object>`;
/// a clash with an existing arrow id is an error.
pub fn conditional_unitize(p: &Plot) -> Result<Plot, ConstructError> {
    let identities = p.compute_identities();
    let mut fresh = BTreeMap::new();
    for a in p.objects() {
        if identities.contains_key(a) {
            continue;
        }
        let name = fresh_identity_name(a);
        if p.has_arrow(&name) {
            return Err(ConstructError::FreshIdCollision(name));
        }
        fresh.insert(a.clone(), name);
    }
    Ok(unitized_with(p, &fresh))
}

/// The conditional unitization with collision-proof fresh names. Derived
/// machinery (cones, natural transformations) works in this plot, so it
/// must never fail; when no ids clash it equals [`conditional_unitize`].
pub(crate) fn conditionally_unitized(p: &Plot) -> Plot {
    let mut fresh = escalated_fresh_map(p);
    for a in p.compute_identities().keys() {
        fresh.remove(a);
    }
    unitized_with(p, &fresh)
}

/// Removes every local identity, with the composition entries that
/// mention one. Undoes [`force_unitize`] exactly.
pub fn deunitize(p: &Plot) -> Plot {
    let identity_map = p.compute_identities();
    let dropped: BTreeSet<&ArrId> = identity_map.values().collect();
    let arrows: BTreeMap<ArrId, (ObjId, ObjId)> = p
        .arrows()
        .iter()
        .filter(|(f, _)| !dropped.contains(f))
        .map(|(f, e)| (f.clone(), e.clone()))
        .collect();
    let comp: BTreeMap<(ArrId, ArrId), ArrId> = p
        .comp()
        .iter()
        .filter(|((f, g), h)| !dropped.contains(f) && !dropped.contains(g) && !dropped.contains(h))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Plot::from_parts(p.objects().clone(), arrows, comp)
        .expect("removing arrows uniformly preserves the axioms")
}

/// Outcome of the adjunction check: both triangle equations, with the
/// first one that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub holds: bool,
    /// `"at_unitized_plot"` or `"at_unital_plot"`, when failing.
    pub failing_equation: Option<&'static str>,
}

/// The inclusion of a plot into its (escalated) forced unitization.
fn inclusion_into_unitized(p: &Plot, unitized: &Plot) -> Punctor {
    let obj_map = p.objects().iter().map(|o| (o.clone(), o.clone())).collect();
    let arrow_map = p.arrows().keys().map(|f| (f.clone(), f.clone())).collect();
    Punctor::unchecked(p.clone(), unitized.clone(), obj_map, arrow_map)
}

/// The extension of the identity over a unital plot to a functor from its
/// forced unitization: fresh loops go to the local identities.
fn collapse_onto_unital(q: &Plot, unitized: &Plot, fresh: &BTreeMap<ObjId, ArrId>) -> Punctor {
    let identities = q.compute_identities();
    let obj_map: BTreeMap<ObjId, ObjId> =
        q.objects().iter().map(|o| (o.clone(), o.clone())).collect();
    let mut arrow_map: BTreeMap<ArrId, ArrId> =
        q.arrows().keys().map(|f| (f.clone(), f.clone())).collect();
    for (a, e) in fresh {
        arrow_map.insert(e.clone(), identities[a].clone());
    }
    Punctor::unchecked(unitized.clone(), q.clone(), obj_map, arrow_map)
}

/// The lift of a punctor to the forced unitizations: the same maps, with
/// each fresh loop sent to the fresh loop at the image object.
fn lifted_punctor(
    f: &Punctor,
    source_unitized: &Plot,
    source_fresh: &BTreeMap<ObjId, ArrId>,
    target_unitized: &Plot,
    target_fresh: &BTreeMap<ObjId, ArrId>,
) -> Punctor {
    let obj_map = f.obj_map().clone();
    let mut arrow_map = f.arrow_map().clone();
    for (a, e) in source_fresh {
        arrow_map.insert(e.clone(), target_fresh[&obj_map[a]].clone());
    }
    Punctor::unchecked(
        source_unitized.clone(),
        target_unitized.clone(),
        obj_map,
        arrow_map,
    )
}

/// Verifies the two triangle equations tying unitization to the inclusion
/// of unital plots: lifting a plot's inclusion and collapsing back is the
/// identity on the unitization, and including a unital plot then
/// collapsing is the identity on the plot. `q` must be unital.
pub fn check_unitization_adjunction(
    p: &Plot,
    q: &Plot,
) -> Result<AdjunctionReport, ConstructError> {
    if q.compute_identities().len() != q.object_count() {
        return Err(ConstructError::NotUnital);
    }

    // First equation, at the unitization of `p`.
    let p_fresh = escalated_fresh_map(p);
    let pn = unitized_with(p, &p_fresh);
    let pn_fresh = escalated_fresh_map(&pn);
    let pnn = unitized_with(&pn, &pn_fresh);
    let eta_p = inclusion_into_unitized(p, &pn);
    let lifted_eta = lifted_punctor(&eta_p, &pn, &p_fresh, &pnn, &pn_fresh);
    let counit_at_pn = collapse_onto_unital(&pn, &pnn, &pn_fresh);
    let first = compose_punctors(&lifted_eta, &counit_at_pn)
        .expect("endpoints match by construction")
        == identity_punctor(&pn);
    if !first {
        return Ok(AdjunctionReport {
            holds: false,
            failing_equation: Some("at_unitized_plot"),
        });
    }

    // Second equation, at the unital plot `q`.
    let q_fresh = escalated_fresh_map(q);
    let qn = unitized_with(q, &q_fresh);
    let eta_q = inclusion_into_unitized(q, &qn);
    let counit_q = collapse_onto_unital(q, &qn, &q_fresh);
    let second = compose_punctors(&eta_q, &counit_q).expect("endpoints match by construction")
        == identity_punctor(q);
    if !second {
        return Ok(AdjunctionReport {
            holds: false,
            failing_equation: Some("at_unital_plot"),
        });
    }
    Ok(AdjunctionReport {
        holds: true,
        failing_equation: None,
    })
}

/// The componentwise product of finitely many plots, with its projection
/// punctors. Objects and arrows are tuples (joined ids); a pair of arrow
/// tuples composes exactly when every coordinate composes. The empty
/// product is the empty quiver.
pub fn product(plots: &[Plot]) -> (Plot, Vec<Punctor>) {
    if plots.is_empty() {
        return (Plot::empty(), Vec::new());
    }
    let object_tuples = cartesian(
        &plots
            .iter()
            .map(|p| p.objects().iter().collect())
            .collect::<Vec<Vec<&String>>>(),
    );
    let arrow_tuples = cartesian(
        &plots
            .iter()
            .map(|p| p.arrows().keys().collect())
            .collect::<Vec<Vec<&String>>>(),
    );

    let join = |parts: &[&String]| join_ids(parts.iter().map(|s| s.as_str()));
    let mut objects: BTreeSet<ObjId> = BTreeSet::new();
    for tuple in &object_tuples {
        objects.insert(join(tuple));
    }
    let mut arrows: BTreeMap<ArrId, (ObjId, ObjId)> = BTreeMap::new();
    for tuple in &arrow_tuples {
        let srcs: Vec<&String> = tuple
            .iter()
            .zip(plots)
            .map(|(f, p)| p.src(f).expect("known arrow"))
            .collect();
        let tgts: Vec<&String> = tuple
            .iter()
            .zip(plots)
            .map(|(f, p)| p.tgt(f).expect("known arrow"))
            .collect();
        arrows.insert(join(tuple), (join(&srcs), join(&tgts)));
    }
    let mut comp: BTreeMap<(ArrId, ArrId), ArrId> = BTreeMap::new();
    for left in &arrow_tuples {
        for right in &arrow_tuples {
            let composites: Option<Vec<&String>> = left
                .iter()
                .zip(right)
                .zip(plots)
                .map(|((f, g), p)| p.compose(f, g))
                .collect();
            if let Some(h) = composites {
                comp.insert((join(left), join(right)), join(&h));
            }
        }
    }
    let plot = Plot::from_parts(objects, arrows, comp)
        .expect("componentwise composition satisfies the axioms");

    let projections = (0..plots.len())
        .map(|i| {
            let obj_map = object_tuples
                .iter()
                .map(|t| (join(t), t[i].clone()))
                .collect();
            let arrow_map = arrow_tuples
                .iter()
                .map(|t| (join(t), t[i].clone()))
                .collect();
            Punctor::unchecked(plot.clone(), plots[i].clone(), obj_map, arrow_map)
        })
        .collect();
    (plot, projections)
}

/// All tuples choosing one entry per pool, in lexicographic pool order.
fn cartesian<'a>(pools: &[Vec<&'a String>]) -> Vec<Vec<&'a String>> {
    let mut out: Vec<Vec<&'a String>> = alloc::vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::new();
        for prefix in &out {
            for item in pool {
                let mut tuple = prefix.clone();
                tuple.push(*item);
                next.push(tuple);
            }
        }
        out = next;
    }
    out
}

/// The unique punctor into the product determined by punctors out of a
/// common source, one per factor: componentwise application. The factors
/// are the punctors' targets, in order.
pub fn pair_into_product(fs: &[Punctor]) -> Result<Punctor, ConstructError> {
    let Some(first) = fs.first() else {
        return Err(ConstructError::FactorMismatch);
    };
    if fs.iter().any(|f| f.source() != first.source()) {
        return Err(ConstructError::FactorMismatch);
    }
    let factors: Vec<Plot> = fs.iter().map(|f| f.target().clone()).collect();
    let (prod, _) = product(&factors);
    let source = first.source().clone();
    let obj_map: BTreeMap<ObjId, ObjId> = source
        .objects()
        .iter()
        .map(|a| {
            let images: Vec<&String> = fs
                .iter()
                .map(|f| f.apply_obj(a).expect("total punctor"))
                .collect();
            (a.clone(), join_ids(images.iter().map(|s| s.as_str())))
        })
        .collect();
    let arrow_map: BTreeMap<ArrId, ArrId> = source
        .arrows()
        .keys()
        .map(|u| {
            let images: Vec<&String> = fs
                .iter()
                .map(|f| f.apply_arrow(u).expect("total punctor"))
                .collect();
            (u.clone(), join_ids(images.iter().map(|s| s.as_str())))
        })
        .collect();
    Ok(Punctor::unchecked(source, prod, obj_map, arrow_map))
}

/// The disjoint union of finitely many plots, with its injection
/// punctors. Carriers are tagged with the component index, composition
/// stays within components. The empty coproduct is the empty quiver.
pub fn coproduct(plots: &[Plot]) -> (Plot, Vec<Punctor>) {
    let tag = |i: usize, id: &str| format!("{i}:{id}");
    let mut objects: BTreeSet<ObjId> = BTreeSet::new();
    let mut arrows: BTreeMap<ArrId, (ObjId, ObjId)> = BTreeMap::new();
    let mut comp: BTreeMap<(ArrId, ArrId), ArrId> = BTreeMap::new();
    for (i, p) in plots.iter().enumerate() {
        for a in p.objects() {
            objects.insert(tag(i, a));
        }
        for (f, (s, t)) in p.arrows() {
            arrows.insert(tag(i, f), (tag(i, s), tag(i, t)));
        }
        for ((f, g), h) in p.comp() {
            comp.insert((tag(i, f), tag(i, g)), tag(i, h));
        }
    }
    let plot =
        Plot::from_parts(objects, arrows, comp).expect("tagged components satisfy the axioms");
    let injections = plots
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let obj_map = p.objects().iter().map(|a| (a.clone(), tag(i, a))).collect();
            let arrow_map = p.arrows().keys().map(|f| (f.clone(), tag(i, f))).collect();
            Punctor::unchecked(p.clone(), plot.clone(), obj_map, arrow_map)
        })
        .collect();
    (plot, injections)
}

/// The unique punctor out of the coproduct determined by punctors into a
/// common target, one per component.
pub fn copair_from_coproduct(fs: &[Punctor]) -> Result<Punctor, ConstructError> {
    let Some(first) = fs.first() else {
        return Err(ConstructError::FactorMismatch);
    };
    if fs.iter().any(|f| f.target() != first.target()) {
        return Err(ConstructError::FactorMismatch);
    }
    let components: Vec<Plot> = fs.iter().map(|f| f.source().clone()).collect();
    let (sum, _) = coproduct(&components);
    let tag = |i: usize, id: &str| format!("{i}:{id}");
    let mut obj_map: BTreeMap<ObjId, ObjId> = BTreeMap::new();
    let mut arrow_map: BTreeMap<ArrId, ArrId> = BTreeMap::new();
    for (i, f) in fs.iter().enumerate() {
        for a in f.source().objects() {
            obj_map.insert(tag(i, a), f.apply_obj(a).expect("total punctor").clone());
        }
        for u in f.source().arrows().keys() {
            arrow_map.insert(tag(i, u), f.apply_arrow(u).expect("total punctor").clone());
        }
    }
    Ok(Punctor::unchecked(
        sum,
        first.target().clone(),
        obj_map,
        arrow_map,
    ))
}

/// The augmentation of a plot by a partial binary operation on an index
/// set: one copy of every arrow per index, except that the copies of each
/// local identity are amalgamated into a single arrow.
///
/// Composition acts coordinate-wise, on arrows through the plot and on
/// indices through the operation, reading amalgamated identity classes
/// through a canonical index: the operation's two-sided unit if it has
/// one, otherwise the least index. Arrow ids are `join_ids([f, i])` for
/// plain copies and `join_ids([f])` for amalgamated classes.
pub fn augment(
    p: &Plot,
    index_set: &BTreeSet<String>,
    zeta: &BTreeMap<(String, String), String>,
) -> Result<Plot, ConstructError> {
    for ((i, j), k) in zeta {
        for x in [i, j, k] {
            if !index_set.contains(x) {
                return Err(ConstructError::UnknownIndex(x.clone()));
            }
        }
    }
    let identity_map = p.compute_identities();
    let identities: BTreeSet<&ArrId> = identity_map.values().collect();
    let unit = index_set
        .iter()
        .find(|u| {
            index_set.iter().all(|k| {
                zeta.get(&((*u).clone(), k.clone())) == Some(k)
                    && zeta.get(&(k.clone(), (*u).clone())) == Some(k)
            })
        })
        .or_else(|| index_set.first());

    // (class id, underlying arrow, canonical index)
    let mut classes: Vec<(ArrId, &ArrId, &String)> = Vec::new();
    let mut arrows: BTreeMap<ArrId, (ObjId, ObjId)> = BTreeMap::new();
    if let Some(anchor) = unit {
        for (f, (s, t)) in p.arrows() {
            if identities.contains(f) {
                let id = join_ids([f.as_str()]);
                arrows.insert(id.clone(), (s.clone(), t.clone()));
                classes.push((id, f, anchor));
            } else {
                for i in index_set {
                    let id = join_ids([f.as_str(), i.as_str()]);
                    arrows.insert(id.clone(), (s.clone(), t.clone()));
                    classes.push((id, f, i));
                }
            }
        }
    }

    let mut comp: BTreeMap<(ArrId, ArrId), ArrId> = BTreeMap::new();
    for (x, f, i) in &classes {
        for (y, g, j) in &classes {
            let Some(h) = p.compose(f, g) else { continue };
            let Some(k) = zeta.get(&((*i).clone(), (*j).clone())) else {
                continue;
            };
            let target = if identities.contains(h) {
                join_ids([h.as_str()])
            } else {
                join_ids([h.as_str(), k.as_str()])
            };
            comp.insert((x.clone(), y.clone()), target);
        }
    }
    Ok(Plot::from_parts(p.objects().clone(), arrows, comp)
        .expect("indexed copies satisfy the axioms"))
}

/// A pair of parallel punctors with one connecting component per source
/// object, living in the conditional unitization of the target so that
/// identity components exist even at non-unital objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    from: Punctor,
    to: Punctor,
    components: BTreeMap<ObjId, ArrId>,
}

impl NaturalTransformation {
    pub fn from_punctor(&self) -> &Punctor {
        &self.from
    }

    pub fn to_punctor(&self) -> &Punctor {
        &self.to
    }

    pub fn components(&self) -> &BTreeMap<ObjId, ArrId> {
        &self.components
    }

    pub fn component(&self, a: &str) -> Option<&ArrId> {
        self.components.get(a)
    }
}

/// Checks the component typing and the commuting squares; both composites
/// must be defined in the unitized target and agree.
pub fn validate_nt(
    from: &Punctor,
    to: &Punctor,
    components: &BTreeMap<ObjId, ArrId>,
) -> Result<NaturalTransformation, ConstructError> {
    if from.source() != to.source() || from.target() != to.target() {
        return Err(ConstructError::NotParallel);
    }
    let qb = conditionally_unitized(from.target());
    let mut violations = Vec::new();
    for key in components.keys() {
        if !from.source().has_object(key) {
            violations.push(NtViolation::UnknownComponentObject(key.clone()));
        }
    }
    for a in from.source().objects() {
        let Some(eps) = components.get(a) else {
            violations.push(NtViolation::MissingComponent(a.clone()));
            continue;
        };
        let Some((s, t)) = qb.endpoints(eps) else {
            violations.push(NtViolation::UnknownComponentArrow {
                object: a.clone(),
                component: eps.clone(),
            });
            continue;
        };
        if s != from.apply_obj(a).expect("total punctor")
            || t != to.apply_obj(a).expect("total punctor")
        {
            violations.push(NtViolation::ComponentEndpoints {
                object: a.clone(),
                component: eps.clone(),
            });
        }
    }
    if violations.is_empty() {
        for f in naturality_failures(&qb, from, to, components) {
            violations.push(NtViolation::Naturality { arrow: f });
        }
    }
    if violations.is_empty() {
        Ok(NaturalTransformation {
            from: from.clone(),
            to: to.clone(),
            components: components.clone(),
        })
    } else {
        Err(ConstructError::InvalidNt(violations))
    }
}

/// The arrows whose naturality square fails, assuming well-typed
/// components.
fn naturality_failures(
    qb: &Plot,
    from: &Punctor,
    to: &Punctor,
    components: &BTreeMap<ObjId, ArrId>,
) -> Vec<ArrId> {
    let mut failures = Vec::new();
    for (f, (a, b)) in from.source().arrows() {
        let ff = from.apply_arrow(f).expect("total punctor");
        let gf = to.apply_arrow(f).expect("total punctor");
        let left = qb.compose(ff, &components[b]);
        let right = qb.compose(&components[a], gf);
        if left.is_none() || right.is_none() || left != right {
            failures.push(f.clone());
        }
    }
    failures
}

/// The identity transformation on a punctor: each component is the
/// unitized target's identity at the image object.
pub fn identity_nt(f: &Punctor) -> NaturalTransformation {
    let qb = conditionally_unitized(f.target());
    let identities = qb.compute_identities();
    let components = f
        .source()
        .objects()
        .iter()
        .map(|a| {
            (
                a.clone(),
                identities[f.apply_obj(a).expect("total punctor")].clone(),
            )
        })
        .collect();
    NaturalTransformation {
        from: f.clone(),
        to: f.clone(),
        components,
    }
}

/// Composes two transformations when possible: the second must start
/// where the first ends, every componentwise composite must be defined in
/// the unitized target, and the resulting components must again be
/// natural. `Ok(None)` reports an undefined composition; an error reports
/// transformations that do not even live between the same plots.
pub fn compose_nt(
    first: &NaturalTransformation,
    second: &NaturalTransformation,
) -> Result<Option<NaturalTransformation>, ConstructError> {
    if first.from.source() != second.from.source() || first.from.target() != second.from.target() {
        return Err(ConstructError::NotParallel);
    }
    if first.to != second.from {
        return Ok(None);
    }
    let qb = conditionally_unitized(first.from.target());
    let mut components: BTreeMap<ObjId, ArrId> = BTreeMap::new();
    for a in first.from.source().objects() {
        match qb.compose(&first.components[a], &second.components[a]) {
            Some(h) => {
                components.insert(a.clone(), h.clone());
            }
            None => return Ok(None),
        }
    }
    if !naturality_failures(&qb, &first.from, &second.to, &components).is_empty() {
        return Ok(None);
    }
    Ok(Some(NaturalTransformation {
        from: first.from.clone(),
        to: second.to.clone(),
        components,
    }))
}

/// The plot whose objects are punctors from `p` to `q` and whose arrows
/// are the natural transformations between them.
///
/// Objects are named `F0, F1, …` after their position in the returned
/// list; arrow ids carry the endpoints and the joined component ids. With
/// no explicit list, all punctors are enumerated under the cap, which
/// also bounds the transformation searches.
pub fn punctor_plot(
    p: &Plot,
    q: &Plot,
    punctor_list: Option<&[Punctor]>,
    cap: u128,
) -> Result<(Plot, Vec<Punctor>), ConstructError> {
    let punctors: Vec<Punctor> = match punctor_list {
        Some(list) => {
            for f in list {
                if f.source() != p || f.target() != q {
                    return Err(ConstructError::NotParallel);
                }
            }
            list.to_vec()
        }
        None => enumerate_punctors(p, q, cap)?,
    };
    let qb = conditionally_unitized(q);

    // Candidate components per ordered pair of punctors, with an overall
    // cap check before materializing anything.
    let mut required: u128 = 0;
    for from in &punctors {
        for to in &punctors {
            let mut count: u128 = 1;
            for a in p.objects() {
                let pool = qb
                    .hom(
                        Some(from.apply_obj(a).expect("total").as_str()),
                        Some(to.apply_obj(a).expect("total").as_str()),
                    )
                    .expect("valid objects");
                count = count.saturating_mul(pool.len() as u128);
            }
            required = required.saturating_add(count);
        }
    }
    if required > cap {
        return Err(ConstructError::Overflow { required, cap });
    }

    let source_objects: Vec<&ObjId> = p.objects().iter().collect();
    let mut objects: BTreeSet<ObjId> = BTreeSet::new();
    let mut arrows: BTreeMap<ArrId, (ObjId, ObjId)> = BTreeMap::new();
    // arrow id → (from index, to index, components)
    let mut transformations: BTreeMap<ArrId, (usize, usize, BTreeMap<ObjId, ArrId>)> =
        BTreeMap::new();
    for i in 0..punctors.len() {
        objects.insert(format!("F{i}"));
    }
    for (i, from) in punctors.iter().enumerate() {
        for (j, to) in punctors.iter().enumerate() {
            let pools: Vec<Vec<ArrId>> = source_objects
                .iter()
                .map(|a| {
                    qb.hom(
                        Some(from.apply_obj(a).expect("total").as_str()),
                        Some(to.apply_obj(a).expect("total").as_str()),
                    )
                    .expect("valid objects")
                    .into_iter()
                    .collect()
                })
                .collect();
            if pools.iter().any(Vec::is_empty) {
                continue;
            }
            let mut pick = alloc::vec![0usize; pools.len()];
            loop {
                let components: BTreeMap<ObjId, ArrId> = source_objects
                    .iter()
                    .zip(&pick)
                    .zip(&pools)
                    .map(|((a, &x), pool)| ((*a).clone(), pool[x].clone()))
                    .collect();
                if naturality_failures(&qb, from, to, &components).is_empty() {
                    let id = format!(
                        "F{i}>F{j}#{}",
                        join_ids(components.values().map(String::as_str))
                    );
                    arrows.insert(id.clone(), (format!("F{i}"), format!("F{j}")));
                    transformations.insert(id, (i, j, components));
                }
                let mut advanced = false;
                for (digit, pool) in pick.iter_mut().zip(&pools).rev() {
                    *digit += 1;
                    if *digit < pool.len() {
                        advanced = true;
                        break;
                    }
                    *digit = 0;
                }
                if !advanced {
                    break;
                }
            }
        }
    }

    let mut comp: BTreeMap<(ArrId, ArrId), ArrId> = BTreeMap::new();
    for (x, (i, j, eps)) in &transformations {
        for (y, (j2, k, eta)) in &transformations {
            if j != j2 {
                continue;
            }
            let mut composite: BTreeMap<ObjId, ArrId> = BTreeMap::new();
            let mut defined = true;
            for a in &source_objects {
                match qb.compose(&eps[*a], &eta[*a]) {
                    Some(h) => {
                        composite.insert((*a).clone(), h.clone());
                    }
                    None => {
                        defined = false;
                        break;
                    }
                }
            }
            if !defined
                || !naturality_failures(&qb, &punctors[*i], &punctors[*k], &composite).is_empty()
            {
                continue;
            }
            let id = format!(
                "F{i}>F{k}#{}",
                join_ids(composite.values().map(String::as_str))
            );
            debug_assert!(arrows.contains_key(&id));
            comp.insert((x.clone(), y.clone()), id);
        }
    }

    let plot = Plot::from_parts(objects, arrows, comp)
        .expect("transformation composition satisfies the axioms");
    Ok((plot, punctors))
}
