//! Structure-preserving maps between plots: validation, composition,
//! duality, images, restrictions, classification, and preserve/reflect
//! checks.
//!
//! A punctor sends objects to objects and arrows to arrows so that
//! endpoints are respected and every defined composite is sent to the
//! defined composite of the images. Nothing is assumed about identities;
//! a punctor that additionally sends local identities to local identities
//! is called unital, or a functor.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::connect::m_equivalent;
use crate::plot::{ArrId, ObjId, Plot, PlotError};
use crate::subplot::{generated_subplot, is_subplot, GenMode};

/// A validated punctor. Owns both endpoint plots; the maps are total on
/// the source carriers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Punctor {
    source: Plot,
    target: Plot,
    obj_map: BTreeMap<ObjId, ObjId>,
    arrow_map: BTreeMap<ArrId, ArrId>,
}

/// A single punctor-law violation found by [`validate_punctor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PunctorViolation {
    /// The object (`object: true`) or arrow map has no entry for a source
    /// carrier.
    NotTotal { object: bool, id: String },
    /// A map entry sends `id` to something that is not a target carrier.
    UnknownImage {
        object: bool,
        id: String,
        image: String,
    },
    /// A map entry's key is not a source carrier.
    UnknownPreimage { object: bool, id: String },
    /// The image of the arrow does not run from the image of its source to
    /// the image of its target.
    EndpointMismatch { arrow: ArrId },
    /// `(f, g)` is composable in the source, but the images do not compose
    /// to the image of `f ⋄ g` in the target.
    CompositionNotPreserved { f: ArrId, g: ArrId },
}

impl fmt::Display for PunctorViolation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |object: &bool| if *object { "object" } else { "arrow" };
        match self {
            PunctorViolation::NotTotal { object, id } => {
                write!(w, "no image given for {} {id:?}", kind(object))
            }
            PunctorViolation::UnknownImage { object, id, image } => {
                write!(
                    w,
                    "{} {id:?} maps to {image:?}, which the target does not have",
                    kind(object)
                )
            }
            PunctorViolation::UnknownPreimage { object, id } => {
                write!(
                    w,
                    "map entry for {} {id:?}, which the source does not have",
                    kind(object)
                )
            }
            PunctorViolation::EndpointMismatch { arrow } => {
                write!(
                    w,
                    "image of arrow {arrow:?} does not run between the images of its endpoints"
                )
            }
            PunctorViolation::CompositionNotPreserved { f, g } => {
                write!(
                    w,
                    "composable pair ({f:?}, {g:?}) is not sent to the composite of the images"
                )
            }
        }
    }
}

impl core::error::Error for PunctorViolation {}

/// Error raised by punctor-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PunctorError {
    /// `compose_punctors(f, g)` requires `target(f) = source(g)`.
    SourceTargetMismatch,
    /// The plot argument is not a subplot of the punctor's source (or
    /// target, for the co-variants).
    NotASubplot,
    /// The requested construction does not yield a valid punctor.
    Invalid(Vec<PunctorViolation>),
    /// An enumeration would exceed the configured search cap.
    Overflow { required: u128, cap: u128 },
    /// An id argument was not found.
    Plot(PlotError),
}

impl fmt::Display for PunctorError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PunctorError::SourceTargetMismatch => {
                w.write_str("the target of the first punctor is not the source of the second")
            }
            PunctorError::NotASubplot => w.write_str("argument is not a subplot"),
            PunctorError::Invalid(violations) => {
                write!(
                    w,
                    "construction is not a punctor ({} violations)",
                    violations.len()
                )
            }
            PunctorError::Overflow { required, cap } => {
                write!(
                    w,
                    "search space of {required} candidates exceeds the cap of {cap}"
                )
            }
            PunctorError::Plot(e) => e.fmt(w),
        }
    }
}

impl core::error::Error for PunctorError {}

impl From<PlotError> for PunctorError {
    fn from(e: PlotError) -> PunctorError {
        PunctorError::Plot(e)
    }
}

/// Checks the punctor laws and builds a [`Punctor`].
///
/// The two laws: the image of `f: A → B` must be an arrow
/// `obj_map(A) → obj_map(B)`, and a composable pair `(f, g)` must map to a
/// composable pair whose composite is the image of `f ⋄ g`. On failure
/// every violation found is returned.
///
/// ```
/// use std::collections::BTreeMap;
/// use plotkit_core::plot::{validate, RawPlot};
/// use plotkit_core::punctor::validate_punctor;
///
/// let p = validate(&RawPlot {
///     objects: vec!["A".into()],
///     arrows: vec![("f".into(), "A".into(), "A".into())],
///     comp: vec![],
/// })
/// .unwrap();
/// let objs = BTreeMap::from([("A".to_string(), "A".to_string())]);
/// let arrs = BTreeMap::from([("f".to_string(), "f".to_string())]);
/// let id = validate_punctor(&p, &p, &objs, &arrs).unwrap();
/// assert_eq!(id.apply_arrow("f"), Some(&"f".to_string()));
/// ```
pub fn validate_punctor(
    source: &Plot,
    target: &Plot,
    obj_map: &BTreeMap<ObjId, ObjId>,
    arrow_map: &BTreeMap<ArrId, ArrId>,
) -> Result<Punctor, Vec<PunctorViolation>> {
    let mut violations = Vec::new();

    for (id, image) in obj_map {
        if !source.has_object(id) {
            violations.push(PunctorViolation::UnknownPreimage {
                object: true,
                id: id.clone(),
            });
        } else if !target.has_object(image) {
            violations.push(PunctorViolation::UnknownImage {
                object: true,
                id: id.clone(),
                image: image.clone(),
            });
        }
    }
    for (id, image) in arrow_map {
        if !source.has_arrow(id) {
            violations.push(PunctorViolation::UnknownPreimage {
                object: false,
                id: id.clone(),
            });
        } else if !target.has_arrow(image) {
            violations.push(PunctorViolation::UnknownImage {
                object: false,
                id: id.clone(),
                image: image.clone(),
            });
        }
    }
    for o in source.objects() {
        if !obj_map.contains_key(o) {
            violations.push(PunctorViolation::NotTotal {
                object: true,
                id: o.clone(),
            });
        }
    }
    for f in source.arrows().keys() {
        if !arrow_map.contains_key(f) {
            violations.push(PunctorViolation::NotTotal {
                object: false,
                id: f.clone(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    for (f, (s, t)) in source.arrows() {
        let image = &arrow_map[f];
        match target.endpoints(image) {
            Some((is, it)) if *is == obj_map[s] && *it == obj_map[t] => {}
            _ => violations.push(PunctorViolation::EndpointMismatch { arrow: f.clone() }),
        }
    }
    for ((f, g), h) in source.comp() {
        let fi = &arrow_map[f];
        let gi = &arrow_map[g];
        if target.compose(fi, gi) != Some(&arrow_map[h]) {
            violations.push(PunctorViolation::CompositionNotPreserved {
                f: f.clone(),
                g: g.clone(),
            });
        }
    }

    if violations.is_empty() {
        Ok(Punctor {
            source: source.clone(),
            target: target.clone(),
            obj_map: obj_map.clone(),
            arrow_map: arrow_map.clone(),
        })
    } else {
        Err(violations)
    }
}

impl Punctor {
    /// Builds a punctor without re-checking the laws. Callers must have
    /// established them; debug builds verify.
    pub(crate) fn unchecked(
        source: Plot,
        target: Plot,
        obj_map: BTreeMap<ObjId, ObjId>,
        arrow_map: BTreeMap<ArrId, ArrId>,
    ) -> Punctor {
        debug_assert!(
            validate_punctor(&source, &target, &obj_map, &arrow_map).is_ok(),
            "internal construction violated the punctor laws"
        );
        Punctor {
            source,
            target,
            obj_map,
            arrow_map,
        }
    }

    pub fn source(&self) -> &Plot {
        &self.source
    }

    pub fn target(&self) -> &Plot {
        &self.target
    }

    pub fn obj_map(&self) -> &BTreeMap<ObjId, ObjId> {
        &self.obj_map
    }

    pub fn arrow_map(&self) -> &BTreeMap<ArrId, ArrId> {
        &self.arrow_map
    }

    pub fn apply_obj(&self, a: &str) -> Option<&ObjId> {
        self.obj_map.get(a)
    }

    pub fn apply_arrow(&self, f: &str) -> Option<&ArrId> {
        self.arrow_map.get(f)
    }

    /// The set of target objects hit by the object map.
    pub fn object_image(&self) -> BTreeSet<ObjId> {
        self.obj_map.values().cloned().collect()
    }

    /// The set of target arrows hit by the arrow map.
    pub fn arrow_image(&self) -> BTreeSet<ArrId> {
        self.arrow_map.values().cloned().collect()
    }
}

/// The identity punctor of a plot.
pub fn identity_punctor(p: &Plot) -> Punctor {
    let obj_map = p.objects().iter().map(|o| (o.clone(), o.clone())).collect();
    let arrow_map = p.arrows().keys().map(|f| (f.clone(), f.clone())).collect();
    Punctor::unchecked(p.clone(), p.clone(), obj_map, arrow_map)
}

/// Whether the punctor is unital: every local identity of the source maps
/// to the local identity of the image object. Unital punctors are also
/// called functors.
pub fn is_functor(f: &Punctor) -> bool {
    let source_ids = f.source.compute_identities();
    if source_ids.is_empty() {
        return true;
    }
    let target_ids = f.target.compute_identities();
    source_ids
        .iter()
        .all(|(a, e)| target_ids.get(&f.obj_map[a]) == Some(&f.arrow_map[e]))
}

/// Componentwise composition: first `f`, then `g`. Requires the target of
/// `f` to be exactly the source of `g`.
pub fn compose_punctors(f: &Punctor, g: &Punctor) -> Result<Punctor, PunctorError> {
    if f.target != g.source {
        return Err(PunctorError::SourceTargetMismatch);
    }
    let obj_map = f
        .obj_map
        .iter()
        .map(|(a, b)| (a.clone(), g.obj_map[b].clone()))
        .collect();
    let arrow_map = f
        .arrow_map
        .iter()
        .map(|(u, v)| (u.clone(), g.arrow_map[v].clone()))
        .collect();
    Ok(Punctor::unchecked(
        f.source.clone(),
        g.target.clone(),
        obj_map,
        arrow_map,
    ))
}

/// The same maps read as a punctor between the dual plots. An involution.
pub fn dual_punctor(f: &Punctor) -> Punctor {
    Punctor::unchecked(
        f.source.dual(),
        f.target.dual(),
        f.obj_map.clone(),
        f.arrow_map.clone(),
    )
}

/// The direct image of a subplot of the source: the relative subplot of
/// the target generated by the object and arrow images. Its composition
/// table is everything the target defines within the image arrows, so the
/// image of a relative subplot is relative again.
pub fn image(f: &Punctor, sub: &Plot) -> Result<Plot, PunctorError> {
    if !is_subplot(sub, &f.source).is_subplot {
        return Err(PunctorError::NotASubplot);
    }
    let objs: BTreeSet<ObjId> = sub.objects().iter().map(|o| f.obj_map[o].clone()).collect();
    let arrs: BTreeSet<ArrId> = sub
        .arrows()
        .keys()
        .map(|a| f.arrow_map[a].clone())
        .collect();
    Ok(generated_subplot(
        &f.target,
        &objs,
        &arrs,
        GenMode::Relative,
    ))
}

/// The inverse image of a subplot of the target: the relative subplot of
/// the source generated by the object and arrow preimages.
pub fn inverse_image(f: &Punctor, sub: &Plot) -> Result<Plot, PunctorError> {
    if !is_subplot(sub, &f.target).is_subplot {
        return Err(PunctorError::NotASubplot);
    }
    let objs: BTreeSet<ObjId> = f
        .obj_map
        .iter()
        .filter(|(_, image)| sub.has_object(image))
        .map(|(o, _)| o.clone())
        .collect();
    let arrs: BTreeSet<ArrId> = f
        .arrow_map
        .iter()
        .filter(|(_, image)| sub.has_arrow(image))
        .map(|(a, _)| a.clone())
        .collect();
    Ok(generated_subplot(
        &f.source,
        &objs,
        &arrs,
        GenMode::Relative,
    ))
}

/// The restriction of `f` to a subplot of its source: the same maps, read
/// on the smaller source with the full target.
pub fn restrict(f: &Punctor, sub: &Plot) -> Result<Punctor, PunctorError> {
    if !is_subplot(sub, &f.source).is_subplot {
        return Err(PunctorError::NotASubplot);
    }
    let obj_map = sub
        .objects()
        .iter()
        .map(|o| (o.clone(), f.obj_map[o].clone()))
        .collect();
    let arrow_map = sub
        .arrows()
        .keys()
        .map(|a| (a.clone(), f.arrow_map[a].clone()))
        .collect();
    Ok(Punctor::unchecked(
        sub.clone(),
        f.target.clone(),
        obj_map,
        arrow_map,
    ))
}

/// The corestriction of `f` to a subplot `Q'` of its target: the punctor
/// from the inverse image of `Q'` to `Q'`.
///
/// The construction is only a punctor when every pair composable in the
/// inverse image stays composable in `Q'`; that holds whenever `Q'` is a
/// relative subplot (in particular for `Q' = image(f, source)`), but can
/// fail for a subplot whose composition table omits pairs with both factors
/// and composite present. In that case the result is `Invalid`.
pub fn corestrict(f: &Punctor, sub: &Plot) -> Result<Punctor, PunctorError> {
    let source = inverse_image(f, sub)?;
    let obj_map: BTreeMap<ObjId, ObjId> = source
        .objects()
        .iter()
        .map(|o| (o.clone(), f.obj_map[o].clone()))
        .collect();
    let arrow_map: BTreeMap<ArrId, ArrId> = source
        .arrows()
        .keys()
        .map(|a| (a.clone(), f.arrow_map[a].clone()))
        .collect();
    validate_punctor(&source, sub, &obj_map, &arrow_map).map_err(PunctorError::Invalid)
}

/// Classification flags of a punctor. The two `m_*` fields are present
/// only when [`classify_punctor`] was given a class `M`.
///
/// Densities and equivalences are relative to `M`: the punctor is
/// `M`-dense when every target object is `M`-equivalent to the image of
/// some source object, and an `M`-equivalence when it is fully faithful
/// and `M`-dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PunctorClassReport {
    /// Local identities map to local identities (the punctor is a functor).
    pub is_unital: bool,
    /// Every per-hom-set component is injective.
    pub faithful: bool,
    /// Every per-hom-set component is surjective.
    pub full: bool,
    pub fully_faithful: bool,
    pub injective_on_objects: bool,
    pub surjective_on_objects: bool,
    /// Faithful and injective on objects. Implies the arrow map is
    /// injective as a whole.
    pub embedding: bool,
    /// Fully faithful and bijective on objects.
    pub isomorphism: bool,
    /// All objects map to one object and all arrows to one arrow: no pair
    /// of parallel punctors into the source is separated by postcomposing.
    pub constant: bool,
    /// No pair of parallel punctors out of the target is separated by
    /// precomposing. With two-object probe targets available this forces
    /// the source to be empty, so the flag is exactly that.
    pub coconstant: bool,
    pub m_dense: Option<bool>,
    pub m_equivalence: Option<bool>,
}

/// Classifies a punctor; `m` is a class of target arrows parameterizing
/// density. No default class is assumed: `m_dense` and `m_equivalence`
/// are `None` when `m` is `None`.
pub fn classify_punctor(
    f: &Punctor,
    m: Option<&BTreeSet<ArrId>>,
) -> Result<PunctorClassReport, PunctorError> {
    if let Some(class) = m {
        for id in class {
            if !f.target.has_arrow(id) {
                return Err(PlotError::UnknownArrow(id.clone()).into());
            }
        }
    }

    let mut source_hom: BTreeMap<(&ObjId, &ObjId), Vec<&ArrId>> = BTreeMap::new();
    for (a, (s, t)) in f.source.arrows() {
        source_hom.entry((s, t)).or_default().push(a);
    }
    let mut target_hom: BTreeMap<(&ObjId, &ObjId), BTreeSet<&ArrId>> = BTreeMap::new();
    for (a, (s, t)) in f.target.arrows() {
        target_hom.entry((s, t)).or_default().insert(a);
    }

    let empty_source: Vec<&ArrId> = Vec::new();
    let empty_target: BTreeSet<&ArrId> = BTreeSet::new();
    let mut faithful = true;
    let mut full = true;
    for x in f.source.objects() {
        for y in f.source.objects() {
            let fibre = source_hom.get(&(x, y)).unwrap_or(&empty_source);
            let image: BTreeSet<&ArrId> = fibre.iter().map(|a| &f.arrow_map[*a]).collect();
            faithful &= image.len() == fibre.len();
            let codomain = target_hom
                .get(&(&f.obj_map[x], &f.obj_map[y]))
                .unwrap_or(&empty_target);
            full &= codomain.is_subset(&image);
        }
    }

    let object_image = f.object_image();
    let injective_on_objects = object_image.len() == f.source.object_count();
    let surjective_on_objects = object_image.len() == f.target.object_count();
    let fully_faithful = faithful && full;

    let m_dense = match m {
        Some(class) => {
            let mut dense = true;
            'objects: for b in f.target.objects() {
                for a in f.source.objects() {
                    if m_equivalent(&f.target, class, &f.obj_map[a], b)? {
                        continue 'objects;
                    }
                }
                dense = false;
                break;
            }
            Some(dense)
        }
        None => None,
    };

    Ok(PunctorClassReport {
        is_unital: is_functor(f),
        faithful,
        full,
        fully_faithful,
        injective_on_objects,
        surjective_on_objects,
        embedding: faithful && injective_on_objects,
        isomorphism: fully_faithful && injective_on_objects && surjective_on_objects,
        constant: object_image.len() <= 1 && f.arrow_image().len() <= 1,
        coconstant: f.source.object_count() == 0,
        m_dense,
        m_equivalence: m_dense.map(|dense| fully_faithful && dense),
    })
}

/// Outcome of [`preserves_reflects`], with a counterexample arrow per
/// failed direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreserveReflectReport {
    /// Every arrow of `M` maps into `N`.
    pub preserves: bool,
    /// An arrow of `M` whose image is outside `N`, when one exists.
    pub preserves_witness: Option<ArrId>,
    /// Every arrow with image in `N` lies in `M`.
    pub reflects: bool,
    /// An arrow outside `M` whose image is in `N`, when one exists.
    pub reflects_witness: Option<ArrId>,
}

/// Checks whether the punctor is `(M, N)`-preserving and
/// `(M, N)`-reflecting, for `M` a class of source arrows and `N` a class
/// of target arrows.
pub fn preserves_reflects(
    f: &Punctor,
    m: &BTreeSet<ArrId>,
    n: &BTreeSet<ArrId>,
) -> Result<PreserveReflectReport, PunctorError> {
    for id in m {
        if !f.source.has_arrow(id) {
            return Err(PlotError::UnknownArrow(id.clone()).into());
        }
    }
    for id in n {
        if !f.target.has_arrow(id) {
            return Err(PlotError::UnknownArrow(id.clone()).into());
        }
    }
    let preserves_witness = m.iter().find(|a| !n.contains(&f.arrow_map[*a])).cloned();
    let reflects_witness = f
        .arrow_map
        .iter()
        .find(|(a, image)| n.contains(*image) && !m.contains(*a))
        .map(|(a, _)| a.clone());
    Ok(PreserveReflectReport {
        preserves: preserves_witness.is_none(),
        preserves_witness,
        reflects: reflects_witness.is_none(),
        reflects_witness,
    })
}

/// The default search cap for [`enumerate_punctors`].
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Enumerates every punctor from `source` to `target`, in a deterministic
/// order.
///
/// The search space is all object maps crossed with, per object map, all
/// endpoint-respecting arrow assignments; candidates are then filtered by
/// the composition law. If the candidate count exceeds `cap` the function
/// returns [`PunctorError::Overflow`] instead of running: callers decide
/// whether to retry with a higher cap.
pub fn enumerate_punctors(
    source: &Plot,
    target: &Plot,
    cap: u128,
) -> Result<Vec<Punctor>, PunctorError> {
    let src_objects: Vec<&ObjId> = source.objects().iter().collect();
    let tgt_objects: Vec<&ObjId> = target.objects().iter().collect();
    let src_arrows: Vec<(&ArrId, &(ObjId, ObjId))> = source.arrows().iter().collect();

    if !src_objects.is_empty() && tgt_objects.is_empty() {
        return Ok(Vec::new());
    }

    let mut target_hom: BTreeMap<(&ObjId, &ObjId), Vec<&ArrId>> = BTreeMap::new();
    for (a, (s, t)) in target.arrows() {
        target_hom.entry((s, t)).or_default().push(a);
    }
    let empty_hom: Vec<&ArrId> = Vec::new();

    // First pass: count the candidate assignments per object map, and
    // overflow out before any allocation proportional to the space.
    let object_maps = (tgt_objects.len() as u128)
        .checked_pow(src_objects.len() as u32)
        .ok_or(PunctorError::Overflow {
            required: u128::MAX,
            cap,
        })?;
    if object_maps > cap {
        return Err(PunctorError::Overflow {
            required: object_maps,
            cap,
        });
    }

    let mut required: u128 = 0;
    let mut stamp = alloc::vec![0usize; src_objects.len()];
    loop {
        let assign: BTreeMap<&ObjId, &ObjId> = src_objects
            .iter()
            .zip(&stamp)
            .map(|(o, &i)| (*o, tgt_objects[i]))
            .collect();
        let mut product: u128 = 1;
        for (_, (s, t)) in &src_arrows {
            let pool = target_hom
                .get(&(assign[s], assign[t]))
                .unwrap_or(&empty_hom);
            product = product.saturating_mul(pool.len() as u128);
            if product == 0 {
                break;
            }
        }
        required = required.saturating_add(product);
        if required > cap {
            return Err(PunctorError::Overflow { required, cap });
        }
        if !advance(&mut stamp, tgt_objects.len()) {
            break;
        }
    }

    // Second pass: materialize.
    let mut out = Vec::new();
    let mut stamp = alloc::vec![0usize; src_objects.len()];
    loop {
        let obj_map: BTreeMap<ObjId, ObjId> = src_objects
            .iter()
            .zip(&stamp)
            .map(|(o, &i)| ((*o).clone(), tgt_objects[i].clone()))
            .collect();
        let pools: Vec<&Vec<&ArrId>> = src_arrows
            .iter()
            .map(|(_, (s, t))| {
                target_hom
                    .get(&(&obj_map[s], &obj_map[t]))
                    .unwrap_or(&empty_hom)
            })
            .collect();
        if pools.iter().all(|pool| !pool.is_empty()) {
            let mut pick = alloc::vec![0usize; src_arrows.len()];
            loop {
                let arrow_map: BTreeMap<ArrId, ArrId> = src_arrows
                    .iter()
                    .zip(&pick)
                    .zip(&pools)
                    .map(|(((a, _), &i), pool)| ((*a).clone(), pool[i].clone()))
                    .collect();
                let law_holds = source.comp().iter().all(|((x, y), z)| {
                    target.compose(&arrow_map[x], &arrow_map[y]) == Some(&arrow_map[z])
                });
                if law_holds {
                    out.push(Punctor::unchecked(
                        source.clone(),
                        target.clone(),
                        obj_map.clone(),
                        arrow_map,
                    ));
                }
                if !advance_mixed(&mut pick, &pools) {
                    break;
                }
            }
        }
        if !advance(&mut stamp, tgt_objects.len()) {
            break;
        }
    }
    Ok(out)
}

/// Advances a uniform-radix odometer; false when it wraps to all zeros.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Advances a mixed-radix odometer over the pool sizes.
fn advance_mixed(digits: &mut [usize], pools: &[&Vec<&ArrId>]) -> bool {
    for (d, pool) in digits.iter_mut().zip(pools).rev() {
        *d += 1;
        if *d < pool.len() {
            return true;
        }
        *d = 0;
    }
    false
}
