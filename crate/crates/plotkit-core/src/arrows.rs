//! Per-arrow classification: cancellation, splitting, invertibility,
//! isomorphisms, neutrality, and endomorphism periodicity.
//!
//! Everything here is phrased through the two regular representations of an
//! arrow `f`: the right one sends `h ↦ h ⋄ f` wherever that is defined, the
//! left one sends `g ↦ f ⋄ g`. Injectivity of a representation is a
//! cancellation property, surjectivity onto the relevant hom-set is a
//! splitting property, and bijectivity is what this module calls an
//! isomorphism. Invertibility is different: it asks for exact identity
//! arrows at the endpoints, so without associativity it neither implies nor
//! follows from being an isomorphism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::plot::{ArrId, Plot, PlotError, Side};
use crate::subplot::restrict_to_relation;

/// The classification flags and inverse witnesses of a single arrow.
///
/// Flag semantics, writing `ρ` and `λ` for the right and left regular
/// representations of the arrow `f: A → B`:
///
/// * `monic`: `ρ` is injective. `epic`: `λ` is injective.
///   `cancellative`: both.
/// * `right_split`: `ρ` is surjective onto `hom(−, B)`. `left_split`: `λ`
///   is surjective onto `hom(A, −)`. `split`: both.
/// * `right_iso`: `ρ` is bijective, i.e. monic and right split. `left_iso`:
///   `λ` is bijective. `iso`: both, equivalently cancellative and split.
///   `automorphism`: iso and `A = B`.
/// * `left_neutral`: `f ⋄ g = g` whenever defined; `left_identity`
///   additionally requires `(f, g)` to be defined for every `g` out of `B`.
///   Right versions are the mirror images. `local_identity`: an
///   endomorphism that is a left and a right identity; this is the arrow
///   [`Plot::compute_identities`] assigns to `A`.
/// * `left_invertible`: some `g` satisfies `g ⋄ f = id(B)` (which requires
///   `B` to be unital); `right_invertible`: some `g` satisfies
///   `f ⋄ g = id(A)`; `invertible`: both; `strongly_invertible`: exactly
///   one left and one right inverse exist and they are the same arrow,
///   recorded as `strong_inverse`.
/// * `constant`: the image of `ρ` has at most one element; `coconstant`:
///   dually for `λ`.
/// * `opaque`: neither monic nor epic; `transparent`: not opaque.
///   `singular`: neither left nor right split; `regular`: not singular.
/// * `endomorphism`: `A = B`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowClasses {
    pub monic: bool,
    pub epic: bool,
    pub cancellative: bool,
    pub left_split: bool,
    pub right_split: bool,
    pub split: bool,
    pub left_invertible: bool,
    pub right_invertible: bool,
    pub invertible: bool,
    pub strongly_invertible: bool,
    pub left_iso: bool,
    pub right_iso: bool,
    pub iso: bool,
    pub automorphism: bool,
    pub left_neutral: bool,
    pub right_neutral: bool,
    pub neutral: bool,
    pub left_identity: bool,
    pub right_identity: bool,
    pub local_identity: bool,
    pub constant: bool,
    pub coconstant: bool,
    pub opaque: bool,
    pub transparent: bool,
    pub singular: bool,
    pub regular: bool,
    pub endomorphism: bool,
    pub left_inverses: BTreeSet<ArrId>,
    pub right_inverses: BTreeSet<ArrId>,
    pub strong_inverse: Option<ArrId>,
}

impl ArrowClasses {
    /// The flag values as `(name, value)` pairs, in a fixed order.
    pub fn flags(&self) -> [(&'static str, bool); 27] {
        [
            ("monic", self.monic),
            ("epic", self.epic),
            ("cancellative", self.cancellative),
            ("left_split", self.left_split),
            ("right_split", self.right_split),
            ("split", self.split),
            ("left_invertible", self.left_invertible),
            ("right_invertible", self.right_invertible),
            ("invertible", self.invertible),
            ("strongly_invertible", self.strongly_invertible),
            ("left_iso", self.left_iso),
            ("right_iso", self.right_iso),
            ("iso", self.iso),
            ("automorphism", self.automorphism),
            ("left_neutral", self.left_neutral),
            ("right_neutral", self.right_neutral),
            ("neutral", self.neutral),
            ("left_identity", self.left_identity),
            ("right_identity", self.right_identity),
            ("local_identity", self.local_identity),
            ("constant", self.constant),
            ("coconstant", self.coconstant),
            ("opaque", self.opaque),
            ("transparent", self.transparent),
            ("singular", self.singular),
            ("regular", self.regular),
            ("endomorphism", self.endomorphism),
        ]
    }

    /// Looks a flag up by its name in [`ArrowClasses::flags`].
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags()
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
    }
}

/// Per-arrow classification of a whole plot. See [`classify_arrows`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowClassReport {
    pub arrows: BTreeMap<ArrId, ArrowClasses>,
}

impl ArrowClassReport {
    pub fn get(&self, f: &str) -> Option<&ArrowClasses> {
        self.arrows.get(f)
    }

    /// The ids of the arrows that belong to the given class.
    pub fn members(&self, which: ArrowClass) -> BTreeSet<ArrId> {
        self.arrows
            .iter()
            .filter(|(_, c)| which.holds(c))
            .map(|(id, _)| id.clone())
            .collect()
    }
}

/// A named arrow class, used to select arrows and to derive subplots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowClass {
    /// Monic arrows.
    Mono,
    /// Epic arrows.
    Epi,
    /// Cancellative arrows (monic and epic).
    Canc,
    /// Left splits.
    Lspl,
    /// Right splits.
    Rspl,
    /// Splits (left and right).
    Spl,
    /// Left isomorphisms.
    Liso,
    /// Right isomorphisms.
    Riso,
    /// Isomorphisms.
    Iso,
    /// Opaque arrows (neither monic nor epic).
    Opa,
    /// Singular arrows (neither left nor right split).
    Sng,
    /// Endomorphisms.
    End,
}

impl ArrowClass {
    pub const ALL: [ArrowClass; 12] = [
        ArrowClass::Mono,
        ArrowClass::Epi,
        ArrowClass::Canc,
        ArrowClass::Lspl,
        ArrowClass::Rspl,
        ArrowClass::Spl,
        ArrowClass::Liso,
        ArrowClass::Riso,
        ArrowClass::Iso,
        ArrowClass::Opa,
        ArrowClass::Sng,
        ArrowClass::End,
    ];

    /// The lower-case name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            ArrowClass::Mono => "mono",
            ArrowClass::Epi => "epi",
            ArrowClass::Canc => "canc",
            ArrowClass::Lspl => "lspl",
            ArrowClass::Rspl => "rspl",
            ArrowClass::Spl => "spl",
            ArrowClass::Liso => "liso",
            ArrowClass::Riso => "riso",
            ArrowClass::Iso => "iso",
            ArrowClass::Opa => "opa",
            ArrowClass::Sng => "sng",
            ArrowClass::End => "end",
        }
    }

    /// Parses [`ArrowClass::name`] back; case-insensitive on ASCII.
    pub fn parse(name: &str) -> Option<ArrowClass> {
        ArrowClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(name))
    }

    fn holds(self, c: &ArrowClasses) -> bool {
        match self {
            ArrowClass::Mono => c.monic,
            ArrowClass::Epi => c.epic,
            ArrowClass::Canc => c.cancellative,
            ArrowClass::Lspl => c.left_split,
            ArrowClass::Rspl => c.right_split,
            ArrowClass::Spl => c.split,
            ArrowClass::Liso => c.left_iso,
            ArrowClass::Riso => c.right_iso,
            ArrowClass::Iso => c.iso,
            ArrowClass::Opa => c.opaque,
            ArrowClass::Sng => c.singular,
            ArrowClass::End => c.endomorphism,
        }
    }
}

impl fmt::Display for ArrowClass {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        w.write_str(self.name())
    }
}

/// Classifies every arrow of the plot. See [`ArrowClasses`] for the flag
/// semantics.
///
/// ```
/// use plotkit_core::arrows::classify_arrows;
/// use plotkit_core::plot::{validate, RawPlot};
///
/// // One object, one loop `e` acting as the identity.
/// let p = validate(&RawPlot {
///     objects: vec!["A".into()],
///     arrows: vec![("e".into(), "A".into(), "A".into())],
///     comp: vec![("e".into(), "e".into(), "e".into())],
/// })
/// .unwrap();
/// let report = classify_arrows(&p);
/// let e = report.get("e").unwrap();
/// assert!(e.local_identity && e.iso && e.strongly_invertible);
/// assert_eq!(e.strong_inverse.as_deref(), Some("e"));
/// ```
pub fn classify_arrows(p: &Plot) -> ArrowClassReport {
    let identities = p.compute_identities();
    let mut into: BTreeMap<&String, BTreeSet<&ArrId>> = BTreeMap::new();
    let mut out_of: BTreeMap<&String, BTreeSet<&ArrId>> = BTreeMap::new();
    for (id, (s, t)) in p.arrows() {
        out_of.entry(s).or_default().insert(id);
        into.entry(t).or_default().insert(id);
    }
    let empty = BTreeSet::new();

    let mut report = ArrowClassReport::default();
    for (f, (src, tgt)) in p.arrows() {
        let rho = p
            .regular_representation(f, Side::Right)
            .expect("arrow exists");
        let lam = p
            .regular_representation(f, Side::Left)
            .expect("arrow exists");
        let rho_image: BTreeSet<&ArrId> = rho.values().collect();
        let lam_image: BTreeSet<&ArrId> = lam.values().collect();
        let into_src = into.get(src).unwrap_or(&empty);
        let into_tgt = into.get(tgt).unwrap_or(&empty);
        let out_of_src = out_of.get(src).unwrap_or(&empty);
        let out_of_tgt = out_of.get(tgt).unwrap_or(&empty);

        let monic = rho_image.len() == rho.len();
        let epic = lam_image.len() == lam.len();
        let right_split = into_tgt.iter().all(|h| rho_image.contains(*h));
        let left_split = out_of_src.iter().all(|g| lam_image.contains(*g));
        let right_neutral = rho.iter().all(|(g, h)| g == h);
        let left_neutral = lam.iter().all(|(g, h)| g == h);
        let right_identity = right_neutral && into_src.iter().all(|h| rho.contains_key(*h));
        let left_identity = left_neutral && out_of_tgt.iter().all(|g| lam.contains_key(*g));
        let endomorphism = src == tgt;

        let right_inverses: BTreeSet<ArrId> = match identities.get(src) {
            Some(e) => lam
                .iter()
                .filter(|(_, h)| *h == e)
                .map(|(g, _)| g.clone())
                .collect(),
            None => BTreeSet::new(),
        };
        let left_inverses: BTreeSet<ArrId> = match identities.get(tgt) {
            Some(e) => rho
                .iter()
                .filter(|(_, h)| *h == e)
                .map(|(g, _)| g.clone())
                .collect(),
            None => BTreeSet::new(),
        };
        let strong_inverse = match (left_inverses.iter().next(), right_inverses.iter().next()) {
            (Some(l), Some(r))
                if left_inverses.len() == 1 && right_inverses.len() == 1 && l == r =>
            {
                Some(l.clone())
            }
            _ => None,
        };

        let cancellative = monic && epic;
        let split = left_split && right_split;
        let right_iso = monic && right_split;
        let left_iso = epic && left_split;
        let iso = left_iso && right_iso;

        let classes = ArrowClasses {
            monic,
            epic,
            cancellative,
            left_split,
            right_split,
            split,
            left_invertible: !left_inverses.is_empty(),
            right_invertible: !right_inverses.is_empty(),
            invertible: !left_inverses.is_empty() && !right_inverses.is_empty(),
            strongly_invertible: strong_inverse.is_some(),
            left_iso,
            right_iso,
            iso,
            automorphism: iso && endomorphism,
            left_neutral,
            right_neutral,
            neutral: left_neutral && right_neutral,
            left_identity,
            right_identity,
            local_identity: endomorphism && left_identity && right_identity,
            constant: rho_image.len() <= 1,
            coconstant: lam_image.len() <= 1,
            opaque: !monic && !epic,
            transparent: monic || epic,
            singular: !left_split && !right_split,
            regular: left_split || right_split,
            endomorphism,
            left_inverses,
            right_inverses,
            strong_inverse,
        };
        report.arrows.insert(f.clone(), classes);
    }
    report
}

/// The left inverses, right inverses, and, when both are unique and agree,
/// the two-sided inverse of an arrow.
///
/// A right inverse `g` satisfies `f ⋄ g = id(src f)`, a left inverse
/// `g ⋄ f = id(tgt f)`; each kind can only exist when the respective
/// endpoint is unital. Uniqueness is not assumed: in a non-associative plot
/// an arrow can have several inverses on a side, so the sets are reported
/// in full and `strong_inverse` is set only when they are singletons with
/// the same element.
#[allow(clippy::type_complexity)]
pub fn inverses(
    p: &Plot,
    f: &str,
) -> Result<(BTreeSet<ArrId>, BTreeSet<ArrId>, Option<ArrId>), PlotError> {
    if !p.has_arrow(f) {
        return Err(PlotError::UnknownArrow(f.into()));
    }
    let report = classify_arrows(p);
    let c = report.get(f).expect("arrow exists");
    Ok((
        c.left_inverses.clone(),
        c.right_inverses.clone(),
        c.strong_inverse.clone(),
    ))
}

/// The subplot of `p` derived from an arrow class: the restriction of the
/// plot to `S × S` where `S` is the class. Its arrows are the members of
/// `S`, its objects their endpoints, and a composite survives exactly when
/// it lies in `S` again. Most of the classes are not closed under
/// composition, so the result is in general a relative subplot rather than
/// a full one.
pub fn derived_arrow_plots(p: &Plot, which: ArrowClass) -> Plot {
    let members = classify_arrows(p).members(which);
    let mut relation = BTreeSet::new();
    for f in &members {
        for g in &members {
            relation.insert((f.clone(), g.clone()));
        }
    }
    restrict_to_relation(p, &relation).expect("class members are arrows of the plot")
}

/// Outcome of the bounded periodicity search of [`order_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderResult {
    /// The defining equation has a solution within the bounds.
    ///
    /// `index` is the least exponent `n` such that some `n`-th power of the
    /// arrow absorbs one of its `p`-th powers (`u ⋄ v = u` with `u` an
    /// `n`-th and `v` a `p`-th power, under any parenthesizations), `period`
    /// the least such `p` for that `n`, and `order = index + period − 1`.
    Periodic {
        index: usize,
        period: usize,
        order: usize,
    },
    /// No `(n, p)` within the bounds satisfies the equation. A larger
    /// search window may still find one, so this is not a proof of
    /// aperiodicity.
    NotPeriodicWithinBounds { max_n: usize, max_p: usize },
}

/// The default power-search bound for [`order_of`]: one more than the
/// number of arrows.
pub fn default_power_bound(p: &Plot) -> usize {
    p.arrow_count() + 1
}

/// Index, period, and order of an endomorphism under the partial,
/// possibly non-associative powers of the plot.
///
/// The `n`-th powers of `f` are all values `(f, …, f) ↦ ℘`-evaluations over
/// every parenthesization `℘` of length `n`; because composition is
/// partial, different parenthesizations may produce different values or
/// none at all. The arrow is periodic with index `n` and period `p` when
/// some `n`-th power `u` and `p`-th power `v` compose to `u ⋄ v = u`. The
/// search is exhaustive over `n ≤ max_n`, `p ≤ max_p`.
///
/// An arrow is idempotent exactly when the result is
/// `Periodic { index: 1, period: 1, .. }`.
pub fn order_of(p: &Plot, f: &str, max_n: usize, max_p: usize) -> Result<OrderResult, PlotError> {
    let (src, tgt) = p
        .endpoints(f)
        .ok_or_else(|| PlotError::UnknownArrow(f.into()))?;
    if src != tgt {
        return Err(PlotError::NotEndomorphism(f.into()));
    }

    // powers[n - 1] = the set of values of all n-th powers of f.
    let bound = max_n.max(max_p).max(1);
    let mut powers: Vec<BTreeSet<ArrId>> = Vec::with_capacity(bound);
    let mut first = BTreeSet::new();
    first.insert(String::from(f));
    powers.push(first);
    for n in 2..=bound {
        let mut values = BTreeSet::new();
        for k in 1..n {
            for u in &powers[k - 1] {
                for v in &powers[n - k - 1] {
                    if let Some(h) = p.compose(u, v) {
                        values.insert(h.clone());
                    }
                }
            }
        }
        powers.push(values);
    }

    for n in 1..=max_n {
        for q in 1..=max_p {
            let hit = powers[n - 1].iter().any(|u| {
                powers[q - 1]
                    .iter()
                    .any(|v| p.compose(u, v).map(String::as_str) == Some(u))
            });
            if hit {
                return Ok(OrderResult::Periodic {
                    index: n,
                    period: q,
                    order: n + q - 1,
                });
            }
        }
    }
    Ok(OrderResult::NotPeriodicWithinBounds { max_n, max_p })
}

/// Whether `f ⋄ f = f`.
pub fn is_idempotent(p: &Plot, f: &str) -> Result<bool, PlotError> {
    if !p.has_arrow(f) {
        return Err(PlotError::UnknownArrow(f.into()));
    }
    Ok(p.compose(f, f).map(String::as_str) == Some(f))
}
