//! The plot data model and its structural theory.
//!
//! A plot consists of finitely many objects, finitely many arrows with a
//! source and a target object each, and a partial composition table. The
//! table may only be defined on pairs `(f, g)` with `tgt(f) = src(g)`, and a
//! defined composite `h = f ⋄ g` must satisfy `src(h) = src(f)` and
//! `tgt(h) = tgt(g)`. Those are the only axioms; associativity, identities,
//! and totality are all optional extra structure that the functions in this
//! module detect rather than assume.
//!
//! Composition is written in diagrammatic order throughout: `f ⋄ g` means
//! "first `f`, then `g`".

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Object identifier. Opaque; equality is string equality.
pub type ObjId = String;
/// Arrow identifier. Opaque; equality is string equality.
pub type ArrId = String;

/// An unvalidated plot description, as read from a file or built by hand.
///
/// `arrows` entries are `(id, src, tgt)`; `comp` entries are `(f, g, h)`
/// meaning `f ⋄ g = h`. Feed it to [`validate`] to obtain a [`Plot`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPlot {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<(ArrId, ObjId, ObjId)>,
    pub comp: Vec<(ArrId, ArrId, ArrId)>,
}

/// A single axiom violation found while validating a [`RawPlot`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlotViolation {
    /// An object id occurs more than once.
    DuplicateObject(ObjId),
    /// An arrow id occurs more than once.
    DuplicateArrow(ArrId),
    /// An arrow endpoint names a missing object.
    DanglingEndpoint { arrow: ArrId, object: ObjId },
    /// A composition triple references an id that is not an arrow.
    UnknownCompArrow {
        f: ArrId,
        g: ArrId,
        h: ArrId,
        unknown: ArrId,
    },
    /// The pair `(f, g)` is assigned a composite more than once.
    DuplicateCompKey { f: ArrId, g: ArrId },
    /// `f ⋄ g` is declared although `tgt(f) != src(g)`.
    CompOutsidePullback { f: ArrId, g: ArrId },
    /// `f ⋄ g = h` is declared but `src(h) != src(f)` or `tgt(h) != tgt(g)`.
    CompEndpointMismatch { f: ArrId, g: ArrId, h: ArrId },
}

impl fmt::Display for PlotViolation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotViolation::DuplicateObject(o) => write!(w, "duplicate object id {o:?}"),
            PlotViolation::DuplicateArrow(a) => write!(w, "duplicate arrow id {a:?}"),
            PlotViolation::DanglingEndpoint { arrow, object } => {
                write!(
                    w,
                    "arrow {arrow:?} has endpoint {object:?} which is not an object"
                )
            }
            PlotViolation::UnknownCompArrow { f, g, h, unknown } => {
                write!(
                    w,
                    "composition ({f:?}, {g:?}) -> {h:?} references unknown arrow {unknown:?}"
                )
            }
            PlotViolation::DuplicateCompKey { f, g } => {
                write!(
                    w,
                    "pair ({f:?}, {g:?}) is assigned a composite more than once"
                )
            }
            PlotViolation::CompOutsidePullback { f, g } => {
                write!(
                    w,
                    "composite of ({f:?}, {g:?}) declared although tgt({f:?}) != src({g:?})"
                )
            }
            PlotViolation::CompEndpointMismatch { f, g, h } => {
                write!(
                    w,
                    "composite ({f:?}, {g:?}) -> {h:?} does not run from src({f:?}) to tgt({g:?})"
                )
            }
        }
    }
}

impl core::error::Error for PlotViolation {}

/// Error raised by queries that reference objects or arrows by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlotError {
    UnknownObject(ObjId),
    UnknownArrow(ArrId),
    /// A list argument does not have the required length.
    LengthMismatch {
        expected: usize,
        got: usize,
    },
    /// The arrow is not a loop although the operation requires one.
    NotEndomorphism(ArrId),
}

impl fmt::Display for PlotError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::UnknownObject(o) => write!(w, "unknown object {o:?}"),
            PlotError::UnknownArrow(a) => write!(w, "unknown arrow {a:?}"),
            PlotError::LengthMismatch { expected, got } => {
                write!(w, "expected {expected} entries, got {got}")
            }
            PlotError::NotEndomorphism(a) => {
                write!(w, "arrow {a:?} is not an endomorphism")
            }
        }
    }
}

impl core::error::Error for PlotError {}

/// Which regular representation of an arrow to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `g ↦ f ⋄ g` on the arrows composable after `f`.
    Left,
    /// `g ↦ g ⋄ f` on the arrows composable before `f`.
    Right,
}

/// A validated plot. Immutable; all operations are pure.
///
/// Identifier order is canonical (sorted), so structurally equal plots are
/// equal values and emit identically.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Plot {
    objects: BTreeSet<ObjId>,
    arrows: BTreeMap<ArrId, (ObjId, ObjId)>,
    comp: BTreeMap<(ArrId, ArrId), ArrId>,
}

/// Validates a raw description against the plot axioms.
///
/// On failure returns every violation found, not just the first.
///
/// ```
/// use plotkit_core::plot::{validate, RawPlot};
///
/// let raw = RawPlot {
///     objects: vec!["A".into()],
///     arrows: vec![("f".into(), "A".into(), "A".into())],
///     comp: vec![("f".into(), "f".into(), "f".into())],
/// };
/// let plot = validate(&raw).unwrap();
/// assert_eq!(plot.compose("f", "f"), Some(&"f".to_string()));
/// ```
pub fn validate(raw: &RawPlot) -> Result<Plot, Vec<PlotViolation>> {
    let mut violations = Vec::new();

    let mut objects = BTreeSet::new();
    for o in &raw.objects {
        if !objects.insert(o.clone()) {
            violations.push(PlotViolation::DuplicateObject(o.clone()));
        }
    }

    let mut arrows = BTreeMap::new();
    for (id, s, t) in &raw.arrows {
        if arrows.contains_key(id) {
            violations.push(PlotViolation::DuplicateArrow(id.clone()));
            continue;
        }
        for end in [s, t] {
            if !objects.contains(end) {
                violations.push(PlotViolation::DanglingEndpoint {
                    arrow: id.clone(),
                    object: end.clone(),
                });
            }
        }
        arrows.insert(id.clone(), (s.clone(), t.clone()));
    }

    let mut comp = BTreeMap::new();
    for (f, g, h) in &raw.comp {
        let mut known = true;
        for id in [f, g, h] {
            if !arrows.contains_key(id) {
                violations.push(PlotViolation::UnknownCompArrow {
                    f: f.clone(),
                    g: g.clone(),
                    h: h.clone(),
                    unknown: id.clone(),
                });
                known = false;
            }
        }
        if !known {
            continue;
        }
        if comp.contains_key(&(f.clone(), g.clone())) {
            violations.push(PlotViolation::DuplicateCompKey {
                f: f.clone(),
                g: g.clone(),
            });
            continue;
        }
        let (sf, tf) = &arrows[f];
        let (sg, tg) = &arrows[g];
        let (sh, th) = &arrows[h];
        if tf != sg {
            violations.push(PlotViolation::CompOutsidePullback {
                f: f.clone(),
                g: g.clone(),
            });
        } else if sh != sf || th != tg {
            violations.push(PlotViolation::CompEndpointMismatch {
                f: f.clone(),
                g: g.clone(),
                h: h.clone(),
            });
        } else {
            comp.insert((f.clone(), g.clone()), h.clone());
        }
    }

    if violations.is_empty() {
        Ok(Plot {
            objects,
            arrows,
            comp,
        })
    } else {
        Err(violations)
    }
}

impl Plot {
    /// The plot with no objects and no arrows.
    pub fn empty() -> Plot {
        Plot::default()
    }

    /// Builds a plot from already-structured parts, checking the axioms.
    pub fn from_parts(
        objects: BTreeSet<ObjId>,
        arrows: BTreeMap<ArrId, (ObjId, ObjId)>,
        comp: BTreeMap<(ArrId, ArrId), ArrId>,
    ) -> Result<Plot, Vec<PlotViolation>> {
        let raw = RawPlot {
            objects: objects.into_iter().collect(),
            arrows: arrows.into_iter().map(|(id, (s, t))| (id, s, t)).collect(),
            comp: comp.into_iter().map(|((f, g), h)| (f, g, h)).collect(),
        };
        validate(&raw)
    }

    pub fn objects(&self) -> &BTreeSet<ObjId> {
        &self.objects
    }

    /// Arrow id to `(src, tgt)`.
    pub fn arrows(&self) -> &BTreeMap<ArrId, (ObjId, ObjId)> {
        &self.arrows
    }

    /// The composition table: `(f, g)` to `f ⋄ g`.
    pub fn comp(&self) -> &BTreeMap<(ArrId, ArrId), ArrId> {
        &self.comp
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn has_object(&self, id: &str) -> bool {
        self.objects.contains(id)
    }

    pub fn has_arrow(&self, id: &str) -> bool {
        self.arrows.contains_key(id)
    }

    pub fn endpoints(&self, f: &str) -> Option<(&ObjId, &ObjId)> {
        self.arrows.get(f).map(|(s, t)| (s, t))
    }

    pub fn src(&self, f: &str) -> Option<&ObjId> {
        self.arrows.get(f).map(|(s, _)| s)
    }

    pub fn tgt(&self, f: &str) -> Option<&ObjId> {
        self.arrows.get(f).map(|(_, t)| t)
    }

    /// `f ⋄ g` if the pair is in the domain of composition.
    pub fn compose(&self, f: &str, g: &str) -> Option<&ArrId> {
        self.comp.get(&(f.into(), g.into()))
    }

    pub fn is_composable(&self, f: &str, g: &str) -> bool {
        self.compose(f, g).is_some()
    }

    /// All pairs `(f, g)` with `tgt(f) = src(g)`, whether or not composition
    /// is defined on them. This is the largest domain composition may have.
    pub fn pullback_pairs(&self) -> Vec<(ArrId, ArrId)> {
        let mut out = Vec::new();
        for (f, (_, tf)) in &self.arrows {
            for (g, (sg, _)) in &self.arrows {
                if tf == sg {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    }

    /// Arrows filtered by optional source and target objects.
    ///
    /// `hom(None, None)` is every arrow; `hom(Some(a), None)` the arrows out
    /// of `a`; `hom(None, Some(b))` the arrows into `b`; `hom(Some(a),
    /// Some(b))` the arrows from `a` to `b`.
    pub fn hom(&self, src: Option<&str>, tgt: Option<&str>) -> Result<BTreeSet<ArrId>, PlotError> {
        for filter in [src, tgt].into_iter().flatten() {
            if !self.has_object(filter) {
                return Err(PlotError::UnknownObject(filter.into()));
            }
        }
        Ok(self
            .arrows
            .iter()
            .filter(|(_, (s, t))| src.map_or(true, |a| s == a) && tgt.map_or(true, |b| t == b))
            .map(|(id, _)| id.clone())
            .collect())
    }

    /// The arrows `g` with `(g, f)` in the domain of composition. These are
    /// exactly the arrows into `src(f)` on which the right regular
    /// representation of `f` acts.
    pub fn hom_into_composable(&self, f: &str) -> Result<BTreeSet<ArrId>, PlotError> {
        if !self.has_arrow(f) {
            return Err(PlotError::UnknownArrow(f.into()));
        }
        Ok(self
            .comp
            .keys()
            .filter(|(_, second)| second == f)
            .map(|(first, _)| first.clone())
            .collect())
    }

    /// The arrows `g` with `(f, g)` in the domain of composition; the domain
    /// of the left regular representation of `f`.
    pub fn hom_from_composable(&self, f: &str) -> Result<BTreeSet<ArrId>, PlotError> {
        if !self.has_arrow(f) {
            return Err(PlotError::UnknownArrow(f.into()));
        }
        Ok(self
            .comp
            .keys()
            .filter(|(first, _)| first == f)
            .map(|(_, second)| second.clone())
            .collect())
    }

    /// The regular representation of `f` as an explicit finite map.
    ///
    /// Right: `g ↦ g ⋄ f` on [`Plot::hom_into_composable`]. Left:
    /// `g ↦ f ⋄ g` on [`Plot::hom_from_composable`]. The left representation
    /// of `f` equals the right representation of `f` in the dual plot.
    pub fn regular_representation(
        &self,
        f: &str,
        side: Side,
    ) -> Result<BTreeMap<ArrId, ArrId>, PlotError> {
        if !self.has_arrow(f) {
            return Err(PlotError::UnknownArrow(f.into()));
        }
        let mut map = BTreeMap::new();
        for ((a, b), h) in &self.comp {
            match side {
                Side::Right if b == f => {
                    map.insert(a.clone(), h.clone());
                }
                Side::Left if a == f => {
                    map.insert(b.clone(), h.clone());
                }
                _ => {}
            }
        }
        Ok(map)
    }

    /// `(indegree, outdegree, degree)` of an object. A loop contributes to
    /// both the indegree and the outdegree.
    pub fn degrees(&self, a: &str) -> Result<(usize, usize, usize), PlotError> {
        if !self.has_object(a) {
            return Err(PlotError::UnknownObject(a.into()));
        }
        let indeg = self.arrows.values().filter(|(_, t)| t == a).count();
        let outdeg = self.arrows.values().filter(|(s, _)| s == a).count();
        Ok((indeg, outdeg, indeg + outdeg))
    }

    /// Whether no arrow touches the object.
    pub fn is_isolated(&self, a: &str) -> Result<bool, PlotError> {
        self.degrees(a).map(|(_, _, d)| d == 0)
    }

    /// The dual plot: same carriers, endpoints swapped, composition
    /// transposed (`f ⋄ g` in the dual is `g ⋄ f` here). An involution:
    /// `p.dual().dual() == p` exactly.
    pub fn dual(&self) -> Plot {
        let objects = self.objects.clone();
        let arrows = self
            .arrows
            .iter()
            .map(|(id, (s, t))| (id.clone(), (t.clone(), s.clone())))
            .collect();
        let comp = self
            .comp
            .iter()
            .map(|((f, g), h)| ((g.clone(), f.clone()), h.clone()))
            .collect();
        Plot {
            objects,
            arrows,
            comp,
        }
    }

    /// The local identities, one per unital object.
    ///
    /// A local identity at `A` is a loop `e: A → A` that is composable with
    /// every arrow into `A` on the right and with every arrow out of `A` on
    /// the left, and acts neutrally in both cases. At most one such loop can
    /// exist per object; the map is maximal by construction.
    pub fn compute_identities(&self) -> BTreeMap<ObjId, ArrId> {
        let mut identities = BTreeMap::new();
        for a in &self.objects {
            let mut found: Option<&ArrId> = None;
            'candidates: for (e, (s, t)) in &self.arrows {
                if s != a || t != a {
                    continue;
                }
                for (f, (_, tf)) in &self.arrows {
                    if tf == a && self.compose(f, e) != Some(f) {
                        continue 'candidates;
                    }
                }
                for (g, (sg, _)) in &self.arrows {
                    if sg == a && self.compose(e, g) != Some(g) {
                        continue 'candidates;
                    }
                }
                assert!(
                    found.is_none(),
                    "two distinct local identities at one object"
                );
                found = Some(e);
            }
            if let Some(e) = found {
                identities.insert(a.clone(), e.clone());
            }
        }
        identities
    }

    /// Computes the eight associativity flags by exhaustive quantification
    /// over arrow triples. See [`AssociativityProfile`].
    pub fn associativity_profile(&self) -> AssociativityProfile {
        let mut from: BTreeMap<&ArrId, Vec<(&ArrId, &ArrId)>> = BTreeMap::new();
        let mut into: BTreeMap<&ArrId, Vec<(&ArrId, &ArrId)>> = BTreeMap::new();
        for ((f, g), h) in &self.comp {
            from.entry(f).or_default().push((g, h));
            into.entry(g).or_default().push((f, h));
        }
        let empty: Vec<(&ArrId, &ArrId)> = Vec::new();

        let mut left_pre: Option<(ArrId, ArrId, ArrId)> = None;
        let mut right_pre: Option<(ArrId, ArrId, ArrId)> = None;
        let mut assoc: Option<(ArrId, ArrId, ArrId)> = None;
        let mut strong_closure: Option<(ArrId, ArrId, ArrId)> = None;
        let mut left_dis: Option<(ArrId, ArrId, ArrId)> = None;
        let mut right_dis: Option<(ArrId, ArrId, ArrId)> = None;

        let triple = |x: &ArrId, y: &ArrId, z: &ArrId| (x.clone(), y.clone(), z.clone());

        // Triples with (x, y) and (y, z) both defined.
        for ((x, y), xy) in &self.comp {
            for (z, yz) in from.get(y).unwrap_or(&empty) {
                let lhs = self.compose(xy, z);
                let rhs = self.compose(x, yz);
                if lhs.is_some() && (rhs.is_none() || lhs != rhs) && left_pre.is_none() {
                    left_pre = Some(triple(x, y, z));
                }
                if rhs.is_some() && (lhs.is_none() || lhs != rhs) && right_pre.is_none() {
                    right_pre = Some(triple(x, y, z));
                }
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r && assoc.is_none() {
                        assoc = Some(triple(x, y, z));
                    }
                }
                if lhs.is_none() && strong_closure.is_none() {
                    strong_closure = Some(triple(x, y, z));
                }
            }
        }

        // Triples with (x, y) and (x ⋄ y, z) both defined.
        for ((x, y), xy) in &self.comp {
            for (z, xy_z) in from.get(xy).unwrap_or(&empty) {
                let ok = match self.compose(y, z) {
                    Some(yz) => self.compose(x, yz) == Some(xy_z),
                    None => false,
                };
                if !ok && left_dis.is_none() {
                    left_dis = Some(triple(x, y, z));
                }
            }
        }

        // Triples with (y, z) and (x, y ⋄ z) both defined.
        for ((y, z), yz) in &self.comp {
            for (x, x_yz) in into.get(yz).unwrap_or(&empty) {
                let ok = match self.compose(x, y) {
                    Some(xy) => self.compose(xy, z) == Some(x_yz),
                    None => false,
                };
                if !ok && right_dis.is_none() {
                    right_dis = Some(triple(x, y, z));
                }
            }
        }

        AssociativityProfile::assemble(
            left_pre,
            right_pre,
            assoc,
            strong_closure,
            left_dis,
            right_dis,
        )
    }

    /// Classifies the plot against the structural hierarchy. See
    /// [`ClassificationReport`].
    pub fn classify(&self) -> ClassificationReport {
        let profile = self.associativity_profile();
        let identity_map = self.compute_identities();
        let unital_objects: BTreeSet<ObjId> = identity_map.keys().cloned().collect();
        let mut witnesses = BTreeMap::new();

        let is_quiver = self.comp.is_empty();
        if let Some(((f, g), _)) = self.comp.iter().next() {
            witnesses.insert("is_quiver", ClassWitness::Pair(f.clone(), g.clone()));
        }

        let mut is_monic_posetal = true;
        let mut seen: BTreeMap<(&ObjId, &ObjId), &ArrId> = BTreeMap::new();
        for (id, (s, t)) in &self.arrows {
            if let Some(prev) = seen.insert((s, t), id) {
                if is_monic_posetal {
                    is_monic_posetal = false;
                    witnesses.insert(
                        "is_monic_posetal",
                        ClassWitness::Pair(prev.clone(), id.clone()),
                    );
                }
            }
        }

        let mut is_epic = true;
        for a in &self.objects {
            if self.is_isolated(a).unwrap_or(false) {
                is_epic = false;
                witnesses.insert("is_epic", ClassWitness::Object(a.clone()));
                break;
            }
        }

        let is_unital = unital_objects.len() == self.objects.len();
        if let Some(a) = self.objects.difference(&unital_objects).next() {
            witnesses.insert("is_unital", ClassWitness::Object(a.clone()));
        }

        let mut is_saturated = true;
        'sat: for (f, (_, tf)) in &self.arrows {
            for (g, (sg, _)) in &self.arrows {
                if tf == sg && !self.is_composable(f, g) {
                    is_saturated = false;
                    witnesses.insert("is_saturated", ClassWitness::Pair(f.clone(), g.clone()));
                    break 'sat;
                }
            }
        }

        let is_semigroupoid = profile.pre_associative;
        let is_semicategory = is_saturated && profile.pre_associative;
        let is_category = is_semicategory && is_unital;

        ClassificationReport {
            is_quiver,
            is_monic_posetal,
            is_epic,
            is_unital,
            is_saturated,
            is_magmoid: is_saturated,
            is_semigroupoid,
            is_semicategory,
            is_category,
            profile,
            unital_objects,
            identity_map,
            witnesses,
        }
    }
}

/// The eight associativity flags of a plot, with one counterexample triple
/// recorded per failed clause.
///
/// For arrows `x, y, z`, write `xy` for `x ⋄ y` where defined. The clauses
/// quantify over all triples:
///
/// * **left pre-associative**: whenever `(x,y)` and `(y,z)` are defined and
///   `(xy, z)` is defined, then `(x, yz)` is defined and `(xy)z = x(yz)`;
/// * **right pre-associative**: the mirror condition (defined `(x, yz)`
///   forces defined `(xy, z)` and equality);
/// * **pre-associative**: both;
/// * **associative**: whenever `(x,y)`, `(y,z)`, and both groupings are
///   defined, the groupings agree;
/// * **strongly associative**: pre-associative, and `(x,y)`, `(y,z)` defined
///   forces `(xy, z)` defined;
/// * **left dissociative**: whenever `(x,y)` and `(xy, z)` are defined, then
///   `(y,z)` and `(x, yz)` are defined and the groupings agree;
/// * **right dissociative**: the mirror (defined `(y,z)` and `(x, yz)` force
///   the other grouping);
/// * **dissociative**: both.
///
/// Consequences that always hold: strongly associative implies
/// pre-associative and associative; left/right dissociative implies
/// left/right pre-associative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityProfile {
    pub left_pre_associative: bool,
    pub right_pre_associative: bool,
    pub pre_associative: bool,
    pub strongly_associative: bool,
    pub associative: bool,
    pub left_dissociative: bool,
    pub right_dissociative: bool,
    pub dissociative: bool,
    /// Flag name to the first counterexample triple `(x, y, z)` found, for
    /// every flag that is false.
    pub counterexamples: BTreeMap<&'static str, (ArrId, ArrId, ArrId)>,
}

impl AssociativityProfile {
    fn assemble(
        left_pre: Option<(ArrId, ArrId, ArrId)>,
        right_pre: Option<(ArrId, ArrId, ArrId)>,
        assoc: Option<(ArrId, ArrId, ArrId)>,
        strong_closure: Option<(ArrId, ArrId, ArrId)>,
        left_dis: Option<(ArrId, ArrId, ArrId)>,
        right_dis: Option<(ArrId, ArrId, ArrId)>,
    ) -> AssociativityProfile {
        let mut cx = BTreeMap::new();
        let pre_cx = left_pre.clone().or_else(|| right_pre.clone());
        let strong_cx = pre_cx.clone().or_else(|| strong_closure.clone());
        let dis_cx = left_dis.clone().or_else(|| right_dis.clone());
        let entries: [(&'static str, &Option<(ArrId, ArrId, ArrId)>); 8] = [
            ("left_pre_associative", &left_pre),
            ("right_pre_associative", &right_pre),
            ("pre_associative", &pre_cx),
            ("strongly_associative", &strong_cx),
            ("associative", &assoc),
            ("left_dissociative", &left_dis),
            ("right_dissociative", &right_dis),
            ("dissociative", &dis_cx),
        ];
        for (name, witness) in entries {
            if let Some(t) = witness {
                cx.insert(name, t.clone());
            }
        }
        AssociativityProfile {
            left_pre_associative: left_pre.is_none(),
            right_pre_associative: right_pre.is_none(),
            pre_associative: left_pre.is_none() && right_pre.is_none(),
            strongly_associative: left_pre.is_none()
                && right_pre.is_none()
                && strong_closure.is_none(),
            associative: assoc.is_none(),
            left_dissociative: left_dis.is_none(),
            right_dissociative: right_dis.is_none(),
            dissociative: left_dis.is_none() && right_dis.is_none(),
            counterexamples: cx,
        }
    }

    /// The flag values as `(name, value)` pairs, in a fixed order.
    pub fn flags(&self) -> [(&'static str, bool); 8] {
        [
            ("left_pre_associative", self.left_pre_associative),
            ("right_pre_associative", self.right_pre_associative),
            ("pre_associative", self.pre_associative),
            ("strongly_associative", self.strongly_associative),
            ("associative", self.associative),
            ("left_dissociative", self.left_dissociative),
            ("right_dissociative", self.right_dissociative),
            ("dissociative", self.dissociative),
        ]
    }
}

/// A witness attached to a false classification flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassWitness {
    Object(ObjId),
    Arrow(ArrId),
    Pair(ArrId, ArrId),
    Triple(ArrId, ArrId, ArrId),
}

impl fmt::Display for ClassWitness {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassWitness::Object(o) => write!(w, "object {o:?}"),
            ClassWitness::Arrow(a) => write!(w, "arrow {a:?}"),
            ClassWitness::Pair(f, g) => write!(w, "pair ({f:?}, {g:?})"),
            ClassWitness::Triple(f, g, h) => write!(w, "triple ({f:?}, {g:?}, {h:?})"),
        }
    }
}

/// Where a plot sits in the structural hierarchy.
///
/// * quiver: the composition domain is empty;
/// * monic (posetal): at most one arrow per ordered object pair;
/// * epic: every object touches at least one arrow;
/// * unital: every object has a local identity;
/// * saturated (magmoid): composition is defined on every pair with
///   `tgt(f) = src(g)`;
/// * semigroupoid: pre-associative;
/// * semicategory: saturated semigroupoid;
/// * category: unital semicategory.
///
/// The empty plot satisfies everything vacuously, so it is a category.
///
/// `witnesses` carries a counterexample for structural flags that are false
/// (the associativity counterexamples live in `profile`). The `is_quiver`
/// entry, when present, is a defined composition pair, i.e. the reason the
/// plot is not a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub is_quiver: bool,
    pub is_monic_posetal: bool,
    pub is_epic: bool,
    pub is_unital: bool,
    pub is_saturated: bool,
    pub is_magmoid: bool,
    pub is_semigroupoid: bool,
    pub is_semicategory: bool,
    pub is_category: bool,
    pub profile: AssociativityProfile,
    pub unital_objects: BTreeSet<ObjId>,
    pub identity_map: BTreeMap<ObjId, ArrId>,
    pub witnesses: BTreeMap<&'static str, ClassWitness>,
}

impl ClassificationReport {
    /// The structural flag values as `(name, value)` pairs, in a fixed order.
    pub fn flags(&self) -> [(&'static str, bool); 9] {
        [
            ("is_quiver", self.is_quiver),
            ("is_monic_posetal", self.is_monic_posetal),
            ("is_epic", self.is_epic),
            ("is_unital", self.is_unital),
            ("is_saturated", self.is_saturated),
            ("is_magmoid", self.is_magmoid),
            ("is_semigroupoid", self.is_semigroupoid),
            ("is_semicategory", self.is_semicategory),
            ("is_category", self.is_category),
        ]
    }
}

/// Joins id components into a single id, injectively: backslashes and
/// commas inside a component are escaped before joining with commas.
/// Derived plots (paths, coproducts, augmentations) build their carrier
/// ids this way so that distinct tuples never collide.
pub(crate) fn join_ids<'a, I>(parts: I) -> String
where
    I: IntoIterator<Item = &'a str>,
{
    let mut out = String::new();
    for (k, part) in parts.into_iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        for ch in part.chars() {
            if ch == '\\' || ch == ',' {
                out.push('\\');
            }
            out.push(ch);
        }
    }
    out
}
