//! Contiguity, connections, paths, and factorizations over a designated
//! arrow class; the bounded path, net, and factorization plots they span;
//! object equivalence, components, and skeletons; and the classification
//! of limits and colimits of finite diagrams.
//!
//! Throughout, `M` is an arbitrary subset of the arrows: none of this
//! assumes the plot is compositive. Factorizations stand in for
//! "composites that may not exist": a pair of an `M`-path and a
//! parenthesization whose evaluation is defined.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::construct::conditionally_unitized;
use crate::paren::{enumerate_parens, eval_paren, Paren, ParenError};
use crate::plot::{join_ids, ArrId, ObjId, Plot, PlotError};
use crate::punctor::{dual_punctor, Punctor};
use crate::subplot::{generated_subplot, GenMode};

/// How two arrows touch. Left: `src f = src g` or `tgt f = src g`. Right
/// is the left relation between the duals, read with the same argument
/// order, so the combined relation is symmetric: the two arrows share an
/// endpoint in the undirected sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contiguity {
    pub left: bool,
    pub right: bool,
    pub either: bool,
}

/// Computes the contiguity relations between two arrows.
pub fn contiguous(p: &Plot, f: &str, g: &str) -> Result<Contiguity, PlotError> {
    let (sf, tf) = p
        .endpoints(f)
        .ok_or_else(|| PlotError::UnknownArrow(f.into()))?;
    let (sg, tg) = p
        .endpoints(g)
        .ok_or_else(|| PlotError::UnknownArrow(g.into()))?;
    let left = sf == sg || tf == sg;
    let right = tf == tg || sf == tg;
    Ok(Contiguity {
        left,
        right,
        either: left || right,
    })
}

/// Checks that every id in `class` names an arrow of `p`.
fn check_class(p: &Plot, class: &BTreeSet<ArrId>) -> Result<(), PlotError> {
    for id in class {
        if !p.has_arrow(id) {
            return Err(PlotError::UnknownArrow(id.clone()));
        }
    }
    Ok(())
}

/// Whether the arrows share an endpoint (the combined contiguity).
fn touches(p: &Plot, f: &str, g: &str) -> bool {
    let (sf, tf) = p.endpoints(f).expect("validated arrow");
    let (sg, tg) = p.endpoints(g).expect("validated arrow");
    sf == sg || tf == sg || tf == tg || sf == tg
}

/// Whether `path` is an `M`-path: nonempty, inside `M`, with consecutive
/// target/source agreement.
pub fn is_m_path(p: &Plot, m: &BTreeSet<ArrId>, path: &[ArrId]) -> Result<bool, PlotError> {
    check_class(p, m)?;
    for f in path {
        if !p.has_arrow(f) {
            return Err(PlotError::UnknownArrow(f.clone()));
        }
    }
    if path.is_empty() || path.iter().any(|f| !m.contains(f)) {
        return Ok(false);
    }
    Ok(path.windows(2).all(|w| p.tgt(&w[0]) == p.src(&w[1])))
}

/// Whether `tuple` is an `M`-connection: a single arrow of `M`, or a tuple
/// whose prefix reorders into an `M`-connection that starts at
/// `src(tuple[0])` and ends contiguous to the last entry.
///
/// Decided by dynamic programming over prefix subsets, so the cost is
/// exponential in the tuple length; intended for the short tuples arising
/// from bounded enumeration.
pub fn is_m_connection(p: &Plot, m: &BTreeSet<ArrId>, tuple: &[ArrId]) -> Result<bool, PlotError> {
    check_class(p, m)?;
    for f in tuple {
        if !p.has_arrow(f) {
            return Err(PlotError::UnknownArrow(f.clone()));
        }
    }
    if tuple.is_empty() || tuple.iter().any(|f| !m.contains(f)) {
        return Ok(false);
    }
    let n = tuple.len();
    if n == 1 {
        return Ok(true);
    }

    // ends[mask] = indices i in mask such that some ordering of the prefix
    // arrows selected by mask is a connection anchored at src(tuple[0])
    // and ending with tuple[i].
    let anchor = p.src(&tuple[0]).expect("validated arrow");
    let bits = n - 1;
    let mut ends: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); 1 << bits];
    for i in 0..bits {
        if p.src(&tuple[i]).expect("validated arrow") == anchor {
            ends[1 << i].insert(i);
        }
    }
    for mask in 1..(1usize << bits) {
        if mask.count_ones() < 2 {
            continue;
        }
        for i in 0..bits {
            if mask & (1 << i) == 0 {
                continue;
            }
            let rest = mask & !(1 << i);
            if ends[rest].iter().any(|&j| touches(p, &tuple[j], &tuple[i])) {
                ends[mask].insert(i);
            }
        }
    }
    let full = (1usize << bits) - 1;
    Ok(ends[full]
        .iter()
        .any(|&j| touches(p, &tuple[j], &tuple[n - 1])))
}

/// An `M`-path together with a parenthesization whose evaluation is
/// defined: a factorization. The pair is the witness format for
/// reachability questions and for mediating arrows in limit
/// classification.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MFactorization {
    pub path: Vec<ArrId>,
    pub wp: Paren,
}

impl MFactorization {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

impl fmt::Display for MFactorization {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            w,
            "{}#{}",
            join_ids(self.path.iter().map(String::as_str)),
            self.wp
        )
    }
}

/// Evaluates a factorization in `p`; `Ok(None)` means some composition
/// along the way is undefined.
pub fn factorization_value(p: &Plot, fact: &MFactorization) -> Result<Option<ArrId>, ParenError> {
    eval_paren(p, &fact.wp, &fact.path)
}

/// Minimal factorization lengths for every (start object, value) pair,
/// with enough derivation structure to rebuild a witness.
struct Reach {
    dist: BTreeMap<(ObjId, ArrId), usize>,
    /// `None`: the single-arrow factorization. `Some((left, right))`: the
    /// value arises as `left.value ⋄ right.value` from those two states.
    deriv: BTreeMap<(ObjId, ArrId), Option<((ObjId, ArrId), (ObjId, ArrId))>>,
}

impl Reach {
    fn witness(&self, start: &str, value: &str) -> Option<MFactorization> {
        let key = (String::from(start), String::from(value));
        if !self.dist.contains_key(&key) {
            return None;
        }
        Some(self.rebuild(&key))
    }

    fn rebuild(&self, key: &(ObjId, ArrId)) -> MFactorization {
        match &self.deriv[key] {
            None => MFactorization {
                path: alloc::vec![key.1.clone()],
                wp: Paren::Leaf,
            },
            Some((lk, rk)) => {
                let left = self.rebuild(lk);
                let right = self.rebuild(rk);
                let mut path = left.path;
                path.extend(right.path);
                MFactorization {
                    path,
                    wp: Paren::Node(
                        alloc::boxed::Box::new(left.wp),
                        alloc::boxed::Box::new(right.wp),
                    ),
                }
            }
        }
    }
}

/// Computes, for every start object, the set of arrows realizable as
/// factorization values over `m`, with minimal lengths. Values combine by
/// the split rule: a value from `X` composed with a value from its target
/// is again a value from `X`. Shortest-first finalization keeps the
/// lengths exact; ties resolve to the lexicographically least derivation.
fn m_reach(p: &Plot, m: &BTreeSet<ArrId>) -> Reach {
    let mut dist: BTreeMap<(ObjId, ArrId), usize> = BTreeMap::new();
    let mut deriv: BTreeMap<(ObjId, ArrId), Option<((ObjId, ArrId), (ObjId, ArrId))>> =
        BTreeMap::new();
    let mut queue: BTreeSet<(usize, ObjId, ArrId)> = BTreeSet::new();
    for f in m {
        let start = p.src(f).expect("validated arrow").clone();
        let key = (start, f.clone());
        dist.insert(key.clone(), 1);
        deriv.insert(key.clone(), None);
        queue.insert((1, key.0, key.1));
    }

    let mut done: BTreeSet<(ObjId, ArrId)> = BTreeSet::new();
    while let Some((len, x, u)) = queue.pop_first() {
        let key = (x, u);
        if done.contains(&key) || dist.get(&key) != Some(&len) {
            continue;
        }
        done.insert(key.clone());
        let (x, u) = key;
        let tu = p.tgt(&u).expect("validated arrow").clone();

        let mut found: Vec<((ObjId, ArrId), usize, ((ObjId, ArrId), (ObjId, ArrId)))> = Vec::new();
        for other in &done {
            let (y, w) = other;
            // (x, u) as the left factor against a finalized value from tgt(u).
            if *y == tu {
                if let Some(v) = p.compose(&u, w) {
                    found.push((
                        (x.clone(), v.clone()),
                        len + dist[other],
                        ((x.clone(), u.clone()), other.clone()),
                    ));
                }
            }
            // (x, u) as the right factor under a finalized value ending at x.
            if p.tgt(w).expect("validated arrow") == &x {
                if let Some(v) = p.compose(w, &u) {
                    found.push((
                        (y.clone(), v.clone()),
                        dist[other] + len,
                        (other.clone(), (x.clone(), u.clone())),
                    ));
                }
            }
        }
        for (key2, len2, parents) in found {
            if done.contains(&key2) {
                continue;
            }
            let better = dist.get(&key2).map_or(true, |&old| len2 < old);
            if better {
                dist.insert(key2.clone(), len2);
                deriv.insert(key2.clone(), Some(parents));
                queue.insert((len2, key2.0, key2.1));
            }
        }
    }
    Reach { dist, deriv }
}

/// Outcome of a reachability query between objects.
///
/// `morphic` is exact: it is decided by a closure computation, not by the
/// bounded search. The witness is only materialized when the minimal
/// length fits under `max_len`; `inconclusive` marks the case where the
/// relation holds but the bound was too small to exhibit a factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphicReport {
    pub morphic: bool,
    pub min_length: Option<usize>,
    pub witness: Option<MFactorization>,
    pub inconclusive: bool,
}

/// Whether some factorization over `m` evaluates to an arrow from `a` to
/// `b`. For a compositive class this is equivalent to a single arrow of
/// `m` from `a` to `b` existing.
pub fn m_morphic(
    p: &Plot,
    m: &BTreeSet<ArrId>,
    a: &str,
    b: &str,
    max_len: usize,
) -> Result<MorphicReport, PlotError> {
    for x in [a, b] {
        if !p.has_object(x) {
            return Err(PlotError::UnknownObject(x.into()));
        }
    }
    check_class(p, m)?;
    let reach = m_reach(p, m);
    let mut best: Option<(usize, ArrId)> = None;
    for ((x, u), len) in &reach.dist {
        if x == a && p.tgt(u).expect("validated arrow") == b {
            if best.as_ref().map_or(true, |(bl, _)| len < bl) {
                best = Some((*len, u.clone()));
            }
        }
    }
    Ok(match best {
        None => MorphicReport {
            morphic: false,
            min_length: None,
            witness: None,
            inconclusive: false,
        },
        Some((len, u)) => MorphicReport {
            morphic: true,
            min_length: Some(len),
            witness: if len <= max_len {
                reach.witness(a, &u)
            } else {
                None
            },
            inconclusive: len > max_len,
        },
    })
}

/// Objects incident to at least one arrow of `m`, with their undirected
/// adjacency.
fn incidence(p: &Plot, m: &BTreeSet<ArrId>) -> BTreeMap<ObjId, BTreeSet<ObjId>> {
    let mut adj: BTreeMap<ObjId, BTreeSet<ObjId>> = BTreeMap::new();
    for f in m {
        let (s, t) = p.endpoints(f).expect("validated arrow");
        adj.entry(s.clone()).or_default().insert(t.clone());
        adj.entry(t.clone()).or_default().insert(s.clone());
    }
    adj
}

/// Whether `a` is connected to `b` through arrows of `m`: the symmetric
/// and transitive (not reflexive) closure of sharing an arrow. An object
/// touched by no arrow of `m` is connected to nothing, itself included.
pub fn m_connected(p: &Plot, m: &BTreeSet<ArrId>, a: &str, b: &str) -> Result<bool, PlotError> {
    for x in [a, b] {
        if !p.has_object(x) {
            return Err(PlotError::UnknownObject(x.into()));
        }
    }
    check_class(p, m)?;
    let adj = incidence(p, m);
    if !adj.contains_key(a) || !adj.contains_key(b) {
        return Ok(false);
    }
    let mut seen: BTreeSet<ObjId> = BTreeSet::new();
    let mut frontier: Vec<ObjId> = alloc::vec![String::from(a)];
    seen.insert(String::from(a));
    while let Some(x) = frontier.pop() {
        if let Some(neighbours) = adj.get(&x) {
            for y in neighbours {
                if seen.insert(y.clone()) {
                    frontier.push(y.clone());
                }
            }
        }
    }
    Ok(seen.contains(b))
}

/// The reflexive closure of [`m_connected`]: equal or connected.
pub fn m_equivalent(p: &Plot, m: &BTreeSet<ArrId>, a: &str, b: &str) -> Result<bool, PlotError> {
    if a == b {
        if !p.has_object(a) {
            return Err(PlotError::UnknownObject(a.into()));
        }
        check_class(p, m)?;
        return Ok(true);
    }
    m_connected(p, m, a, b)
}

/// The equivalence classes of objects under [`m_equivalent`], each with
/// the full subplot it spans. Classes are ordered by their least object.
pub fn m_components(
    p: &Plot,
    m: &BTreeSet<ArrId>,
) -> Result<Vec<(BTreeSet<ObjId>, Plot)>, PlotError> {
    check_class(p, m)?;
    let adj = incidence(p, m);
    let mut seen: BTreeSet<ObjId> = BTreeSet::new();
    let mut classes: Vec<BTreeSet<ObjId>> = Vec::new();
    for root in p.objects() {
        if seen.contains(root) {
            continue;
        }
        let mut class: BTreeSet<ObjId> = BTreeSet::new();
        class.insert(root.clone());
        if adj.contains_key(root) {
            let mut frontier = alloc::vec![root.clone()];
            while let Some(x) = frontier.pop() {
                for y in &adj[&x] {
                    if class.insert(y.clone()) {
                        frontier.push(y.clone());
                    }
                }
            }
        }
        seen.extend(class.iter().cloned());
        classes.push(class);
    }
    Ok(classes
        .into_iter()
        .map(|class| {
            let sub = generated_subplot(p, &class, &BTreeSet::new(), GenMode::Obj);
            (class, sub)
        })
        .collect())
}

/// The full subplot spanned by the least object of each equivalence
/// class. Its inclusion into `p` is an equivalence relative to `m`.
pub fn skeleton(p: &Plot, m: &BTreeSet<ArrId>) -> Result<Plot, PlotError> {
    let mut representatives: BTreeSet<ObjId> = BTreeSet::new();
    for (class, _) in m_components(p, m)? {
        representatives.insert(class.first().expect("classes are nonempty").clone());
    }
    Ok(generated_subplot(
        p,
        &representatives,
        &BTreeSet::new(),
        GenMode::Obj,
    ))
}

/// Whether no two distinct objects are equivalent relative to `m`.
pub fn is_m_skeletal(p: &Plot, m: &BTreeSet<ArrId>) -> Result<bool, PlotError> {
    Ok(m_components(p, m)?
        .iter()
        .all(|(class, _)| class.len() == 1))
}

/// All `M`-paths of length 1..=`max_len`, grouped by nothing, in
/// lexicographic order of the id sequence.
fn enumerate_m_paths(p: &Plot, m: &BTreeSet<ArrId>, max_len: usize) -> Vec<Vec<ArrId>> {
    let mut by_src: BTreeMap<&ObjId, Vec<&ArrId>> = BTreeMap::new();
    for f in m {
        by_src
            .entry(p.src(f).expect("validated arrow"))
            .or_default()
            .push(f);
    }
    let mut out: Vec<Vec<ArrId>> = Vec::new();
    let mut stack: Vec<Vec<ArrId>> = m.iter().map(|f| alloc::vec![f.clone()]).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        if path.len() < max_len {
            let end = p
                .tgt(path.last().expect("nonempty"))
                .expect("validated arrow");
            if let Some(nexts) = by_src.get(end) {
                for f in nexts.iter().rev() {
                    let mut longer = path.clone();
                    longer.push((*f).clone());
                    stack.push(longer);
                }
            }
        }
        out.push(path);
    }
    out.sort();
    out
}

/// The plot of `M`-paths of length at most `max_len`: objects are those
/// of `p`, arrows are the paths, and composition is concatenation where
/// the endpoints meet and the combined length still fits the bound.
/// Composition beyond the bound is absent, making the truncation a plot
/// rather than the full path semicategory.
pub fn bounded_path_plot(p: &Plot, m: &BTreeSet<ArrId>, max_len: usize) -> Result<Plot, PlotError> {
    check_class(p, m)?;
    let paths = enumerate_m_paths(p, m, max_len);
    build_tuple_plot(p, &paths, &paths, max_len)
}

/// The plot of `M`-connections of length at most `max_len`. Arrows are
/// the connections; composition concatenates a pair of `M`-paths with
/// matching endpoints (pairs involving a non-path connection never
/// compose), within the length bound.
pub fn bounded_net_plot(p: &Plot, m: &BTreeSet<ArrId>, max_len: usize) -> Result<Plot, PlotError> {
    check_class(p, m)?;
    // Connections are not closed under literal prefixes (the chain
    // ordering may interleave), so every tuple is tested, not only the
    // extensions of shorter connections.
    let mut connections: Vec<Vec<ArrId>> = Vec::new();
    let mut tuples: Vec<Vec<ArrId>> = alloc::vec![Vec::new()];
    for _ in 0..max_len {
        let mut next: Vec<Vec<ArrId>> = Vec::new();
        for tuple in &tuples {
            for f in m {
                let mut longer = tuple.clone();
                longer.push(f.clone());
                next.push(longer);
            }
        }
        for tuple in &next {
            if is_m_connection(p, m, tuple)? {
                connections.push(tuple.clone());
            }
        }
        tuples = next;
    }
    connections.sort();
    let paths: Vec<Vec<ArrId>> = connections
        .iter()
        .filter(|tuple| tuple.windows(2).all(|w| p.tgt(&w[0]) == p.src(&w[1])))
        .cloned()
        .collect();
    build_tuple_plot(p, &connections, &paths, max_len)
}

/// Shared assembly for path and net plots: `carrier` lists the tuples
/// that become arrows, `composable` the sub-list on which concatenation
/// is defined.
fn build_tuple_plot(
    p: &Plot,
    carrier: &[Vec<ArrId>],
    composable: &[Vec<ArrId>],
    max_len: usize,
) -> Result<Plot, PlotError> {
    let id_of = |tuple: &[ArrId]| join_ids(tuple.iter().map(String::as_str));
    let mut arrows: BTreeMap<ArrId, (ObjId, ObjId)> = BTreeMap::new();
    for tuple in carrier {
        let s = p.src(&tuple[0]).expect("validated arrow").clone();
        let t = p
            .tgt(tuple.last().expect("nonempty"))
            .expect("validated arrow")
            .clone();
        arrows.insert(id_of(tuple), (s, t));
    }
    let carrier_ids: BTreeSet<ArrId> = arrows.keys().cloned().collect();
    let mut comp: BTreeMap<(ArrId, ArrId), ArrId> = BTreeMap::new();
    for left in composable {
        for right in composable {
            if left.len() + right.len() > max_len {
                continue;
            }
            if p.tgt(left.last().expect("nonempty")) != p.src(&right[0]) {
                continue;
            }
            let mut joined = left.clone();
            joined.extend(right.iter().cloned());
            let joined_id = id_of(&joined);
            debug_assert!(carrier_ids.contains(&joined_id));
            comp.insert((id_of(left), id_of(right)), joined_id);
        }
    }
    Ok(Plot::from_parts(p.objects().clone(), arrows, comp)
        .expect("tuple plots satisfy the axioms by construction"))
}

/// A factorization arrow of the bounded factorization plot, kept with its
/// value for building the evaluation punctor.
struct FactArrow {
    path: Vec<ArrId>,
    wp: Paren,
    value: ArrId,
}

fn enumerate_facts(p: &Plot, m: &BTreeSet<ArrId>, max_len: usize) -> Vec<FactArrow> {
    let mut out = Vec::new();
    for path in enumerate_m_paths(p, m, max_len) {
        for wp in enumerate_parens(path.len()).expect("positive length") {
            if let Ok(Some(value)) = eval_paren(p, &wp, &path) {
                out.push(FactArrow {
                    path: path.clone(),
                    wp,
                    value,
                });
            }
        }
    }
    out
}

fn fact_id(fact: &FactArrow) -> ArrId {
    let mut id = join_ids(fact.path.iter().map(String::as_str));
    id.push('#');
    id.push_str(&fact.wp.to_string());
    id
}

/// The plot of `M`-factorizations of length at most `max_len`: pairs of
/// an `M`-path and a parenthesization with defined evaluation. A pair of
/// factorizations composes to the concatenated path under the
/// parenthesization that splits into the two parts, exactly when the two
/// values compose in `p` and the bound is kept.
pub fn bounded_fact_plot(p: &Plot, m: &BTreeSet<ArrId>, max_len: usize) -> Result<Plot, PlotError> {
    Ok(fact_plot_with_values(p, m, max_len)?.0)
}

fn fact_plot_with_values(
    p: &Plot,
    m: &BTreeSet<ArrId>,
    max_len: usize,
) -> Result<(Plot, BTreeMap<ArrId, ArrId>), PlotError> {
    check_class(p, m)?;
    let facts = enumerate_facts(p, m, max_len);
    let mut arrows: BTreeMap<ArrId, (ObjId, ObjId)> = BTreeMap::new();
    let mut values: BTreeMap<ArrId, ArrId> = BTreeMap::new();
    for fact in &facts {
        let s = p.src(&fact.path[0]).expect("validated arrow").clone();
        let t = p
            .tgt(fact.path.last().expect("nonempty"))
            .expect("validated arrow")
            .clone();
        let id = fact_id(fact);
        arrows.insert(id.clone(), (s, t));
        values.insert(id, fact.value.clone());
    }
    let mut comp: BTreeMap<(ArrId, ArrId), ArrId> = BTreeMap::new();
    for left in &facts {
        for right in &facts {
            if left.path.len() + right.path.len() > max_len {
                continue;
            }
            if p.tgt(left.path.last().expect("nonempty")) != p.src(&right.path[0]) {
                continue;
            }
            if p.compose(&left.value, &right.value).is_none() {
                continue;
            }
            let mut path = left.path.clone();
            path.extend(right.path.iter().cloned());
            let joined = FactArrow {
                path,
                wp: Paren::Node(
                    alloc::boxed::Box::new(left.wp.clone()),
                    alloc::boxed::Box::new(right.wp.clone()),
                ),
                value: p
                    .compose(&left.value, &right.value)
                    .expect("checked above")
                    .clone(),
            };
            let joined_id = fact_id(&joined);
            debug_assert!(arrows.contains_key(&joined_id));
            comp.insert((fact_id(left), fact_id(right)), joined_id);
        }
    }
    let plot = Plot::from_parts(p.objects().clone(), arrows, comp)
        .expect("factorization plots satisfy the axioms by construction");
    Ok((plot, values))
}

/// The evaluation punctor from the bounded factorization plot into `p`:
/// identity on objects, each factorization to its value. Respecting
/// composition is built into the factorization plot's table.
pub fn evaluation_punctor(
    p: &Plot,
    m: &BTreeSet<ArrId>,
    max_len: usize,
) -> Result<Punctor, PlotError> {
    let (fact_plot, values) = fact_plot_with_values(p, m, max_len)?;
    let obj_map: BTreeMap<ObjId, ObjId> =
        p.objects().iter().map(|o| (o.clone(), o.clone())).collect();
    Ok(Punctor::unchecked(fact_plot, p.clone(), obj_map, values))
}

/// A punctor out of a quiver: the indexing data for cones and limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    punctor: Punctor,
}

/// Errors raised by diagram and limit operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    /// A diagram's source must have an empty composition domain.
    ShapeNotQuiver,
    /// The reference cone failed validation; the violations say why.
    InvalidCone(Vec<ConeViolation>),
    Plot(PlotError),
}

impl fmt::Display for ConeError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::ShapeNotQuiver => w.write_str("diagram shapes must be quivers"),
            ConeError::InvalidCone(violations) => {
                write!(
                    w,
                    "cone is not valid for the diagram ({} violations)",
                    violations.len()
                )
            }
            ConeError::Plot(e) => e.fmt(w),
        }
    }
}

impl core::error::Error for ConeError {}

impl From<PlotError> for ConeError {
    fn from(e: PlotError) -> ConeError {
        ConeError::Plot(e)
    }
}

impl Diagram {
    /// Wraps a punctor whose source is a quiver.
    pub fn new(punctor: Punctor) -> Result<Diagram, ConeError> {
        if !punctor.source().comp().is_empty() {
            return Err(ConeError::ShapeNotQuiver);
        }
        Ok(Diagram { punctor })
    }

    pub fn punctor(&self) -> &Punctor {
        &self.punctor
    }

    pub fn shape(&self) -> &Plot {
        self.punctor.source()
    }

    pub fn target(&self) -> &Plot {
        self.punctor.target()
    }

    /// The dual diagram, into the dual plot. Colimit questions reduce to
    /// limit questions about this.
    pub fn dual(&self) -> Diagram {
        Diagram {
            punctor: dual_punctor(&self.punctor),
        }
    }
}

/// An apex with one leg per shape object. Legs live in the conditional
/// unitization of the diagram's target, so objects without local
/// identities still admit identity-like legs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub apex: ObjId,
    pub legs: BTreeMap<ObjId, ArrId>,
}

/// A single defect found when checking a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeViolation {
    UnknownApex(ObjId),
    /// The legs map misses a shape object.
    MissingLeg(ObjId),
    /// The legs map mentions something that is not a shape object.
    UnknownLegObject(ObjId),
    /// The leg is not an arrow of the unitized target.
    UnknownLegArrow {
        shape_object: ObjId,
        leg: ArrId,
    },
    /// The leg does not run from the apex to the image of the shape object.
    LegEndpoints {
        shape_object: ObjId,
        leg: ArrId,
    },
    /// For the shape arrow `f: A → B`, `leg_A ⋄ D(f)` is undefined or
    /// differs from `leg_B`.
    Commutation {
        shape_arrow: ArrId,
    },
}

impl fmt::Display for ConeViolation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeViolation::UnknownApex(a) => write!(w, "apex {a:?} is not an object"),
            ConeViolation::MissingLeg(a) => write!(w, "no leg for shape object {a:?}"),
            ConeViolation::UnknownLegObject(a) => {
                write!(w, "leg keyed by {a:?}, which is not a shape object")
            }
            ConeViolation::UnknownLegArrow { shape_object, leg } => {
                write!(
                    w,
                    "leg {leg:?} at {shape_object:?} is not an arrow of the unitized target"
                )
            }
            ConeViolation::LegEndpoints { shape_object, leg } => {
                write!(
                    w,
                    "leg {leg:?} at {shape_object:?} does not run from the apex to the image"
                )
            }
            ConeViolation::Commutation { shape_arrow } => {
                write!(w, "legs do not commute over shape arrow {shape_arrow:?}")
            }
        }
    }
}

impl core::error::Error for ConeViolation {}

/// Outcome of [`check_cone`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub valid: bool,
    /// Some leg, or some commutation composite, exists only in the
    /// unitized target rather than the target itself.
    pub uses_adjoined_identities: bool,
    pub violations: Vec<ConeViolation>,
}

/// Checks the cone conditions for a diagram: legs typed from the apex to
/// the image objects in the unitized target, commuting with the diagram's
/// arrows there.
pub fn check_cone(d: &Diagram, cone: &Cone) -> ConeReport {
    let p = d.target();
    let pb = conditionally_unitized(p);
    let mut violations = Vec::new();
    let mut adjoined = false;

    if !pb.has_object(&cone.apex) {
        violations.push(ConeViolation::UnknownApex(cone.apex.clone()));
    }
    for key in cone.legs.keys() {
        if !d.shape().has_object(key) {
            violations.push(ConeViolation::UnknownLegObject(key.clone()));
        }
    }
    for a in d.shape().objects() {
        let Some(leg) = cone.legs.get(a) else {
            violations.push(ConeViolation::MissingLeg(a.clone()));
            continue;
        };
        let Some((s, t)) = pb.endpoints(leg) else {
            violations.push(ConeViolation::UnknownLegArrow {
                shape_object: a.clone(),
                leg: leg.clone(),
            });
            continue;
        };
        if s != &cone.apex || t != d.punctor().apply_obj(a).expect("total punctor") {
            violations.push(ConeViolation::LegEndpoints {
                shape_object: a.clone(),
                leg: leg.clone(),
            });
            continue;
        }
        if !p.has_arrow(leg) {
            adjoined = true;
        }
    }
    if violations.is_empty() {
        for (f, (a, b)) in d.shape().arrows() {
            let image = d.punctor().apply_arrow(f).expect("total punctor");
            let leg_a = &cone.legs[a];
            let leg_b = &cone.legs[b];
            if pb.compose(leg_a, image) != Some(leg_b) {
                violations.push(ConeViolation::Commutation {
                    shape_arrow: f.clone(),
                });
            } else if p.compose(leg_a, image).is_none() {
                adjoined = true;
            }
        }
    }

    ConeReport {
        valid: violations.is_empty(),
        uses_adjoined_identities: adjoined,
        violations,
    }
}

/// The cocone conditions: a cone for the dual diagram.
pub fn check_cocone(d: &Diagram, cocone: &Cone) -> ConeReport {
    check_cone(&d.dual(), cocone)
}

/// How many minimal-length mediating factorizations a competitor admits.
/// `AtLeastOne` appears when reachability proves existence but the
/// minimal length exceeds the search bound, so the exact count is
/// unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MediationCount {
    Exactly(usize),
    AtLeastOne,
}

/// One competing cone with its mediation count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompetitorOutcome {
    pub apex: ObjId,
    pub legs: BTreeMap<ObjId, ArrId>,
    pub count: MediationCount,
}

/// The verdict of [`classify_limit`]. `WeakAndSub` is reachable only if a
/// competitor had at least and at most one mediation without exactly one,
/// which cannot happen; the variant exists for completeness of the
/// reporting vocabulary and is never produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitClass {
    Strong,
    WeakOnly,
    SublimitOnly,
    WeakAndSub,
    None,
    Inconclusive,
}

impl LimitClass {
    pub fn name(self) -> &'static str {
        match self {
            LimitClass::Strong => "strong",
            LimitClass::WeakOnly => "weak_only",
            LimitClass::SublimitOnly => "sublimit_only",
            LimitClass::WeakAndSub => "weak_and_sub",
            LimitClass::None => "none",
            LimitClass::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for LimitClass {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        w.write_str(self.name())
    }
}

/// The classification together with the per-competitor evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub classification: LimitClass,
    pub competitors: Vec<CompetitorOutcome>,
}

/// Classifies a cone against every other cone to the same diagram.
///
/// For each competitor the mediating factorizations are the pairs of an
/// `m`-path from the competitor's apex to the cone's apex and a
/// parenthesization, whose value composes with each leg to the
/// competitor's corresponding leg; existence is decided exactly, counts
/// are taken among factorizations of minimal length, and a minimal length
/// beyond `max_len` leaves the count at "at least one".
///
/// The verdicts: strong means every competitor has exactly one; weak-only
/// means every competitor has at least one and some has several;
/// sublimit-only means every count is at most one and some is zero; none
/// means some competitor has zero while another has several; anything the
/// evidence cannot settle is inconclusive.
pub fn classify_limit(
    d: &Diagram,
    cone: &Cone,
    m: &BTreeSet<ArrId>,
    max_len: usize,
) -> Result<LimitReport, ConeError> {
    let p = d.target();
    let pb = conditionally_unitized(p);
    check_class(&pb, m)?;
    let report = check_cone(d, cone);
    if !report.valid {
        return Err(ConeError::InvalidCone(report.violations));
    }

    let shape_objects: Vec<&ObjId> = d.shape().objects().iter().collect();
    let mut competitors: Vec<Cone> = Vec::new();
    for apex in pb.objects() {
        let pools: Vec<Vec<ArrId>> = shape_objects
            .iter()
            .map(|a| {
                let image = d.punctor().apply_obj(a).expect("total punctor");
                pb.hom(Some(apex), Some(image))
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
            let legs: BTreeMap<ObjId, ArrId> = shape_objects
                .iter()
                .zip(&pick)
                .zip(&pools)
                .map(|((a, &i), pool)| ((*a).clone(), pool[i].clone()))
                .collect();
            let candidate = Cone {
                apex: apex.clone(),
                legs,
            };
            let commutes = d.shape().arrows().iter().all(|(f, (a, b))| {
                let image = d.punctor().apply_arrow(f).expect("total punctor");
                pb.compose(&candidate.legs[a], image) == Some(&candidate.legs[b])
            });
            if commutes && candidate != *cone {
                competitors.push(candidate);
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

    let reach = m_reach(&pb, m);
    let mut outcomes: Vec<CompetitorOutcome> = Vec::new();
    for competitor in competitors {
        let mediators: BTreeSet<ArrId> = pb
            .hom(Some(competitor.apex.as_str()), Some(cone.apex.as_str()))
            .expect("valid objects")
            .into_iter()
            .filter(|u| {
                shape_objects
                    .iter()
                    .all(|a| pb.compose(u, &cone.legs[*a]) == Some(&competitor.legs[*a]))
            })
            .collect();
        let min_len = mediators
            .iter()
            .filter_map(|u| reach.dist.get(&(competitor.apex.clone(), u.clone())))
            .min()
            .copied();
        let count = match min_len {
            None => MediationCount::Exactly(0),
            Some(len) if len > max_len => MediationCount::AtLeastOne,
            Some(len) => {
                let mut hits = 0usize;
                for path in exact_length_paths(&pb, m, &competitor.apex, len) {
                    for wp in enumerate_parens(len).expect("positive length") {
                        if let Ok(Some(value)) = eval_paren(&pb, &wp, &path) {
                            if mediators.contains(&value) {
                                hits += 1;
                            }
                        }
                    }
                }
                MediationCount::Exactly(hits)
            }
        };
        outcomes.push(CompetitorOutcome {
            apex: competitor.apex,
            legs: competitor.legs,
            count,
        });
    }

    let all_at_least_one = outcomes.iter().all(|o| {
        matches!(
            o.count,
            MediationCount::AtLeastOne | MediationCount::Exactly(1..)
        )
    });
    let all_exactly_one = outcomes
        .iter()
        .all(|o| o.count == MediationCount::Exactly(1));
    let some_known_many = outcomes
        .iter()
        .any(|o| matches!(o.count, MediationCount::Exactly(n) if n >= 2));
    let some_zero = outcomes
        .iter()
        .any(|o| o.count == MediationCount::Exactly(0));
    let any_unknown = outcomes
        .iter()
        .any(|o| o.count == MediationCount::AtLeastOne);
    let all_at_most_one = outcomes.iter().all(|o| {
        matches!(
            o.count,
            MediationCount::Exactly(0) | MediationCount::Exactly(1)
        )
    });

    let classification = if all_exactly_one {
        LimitClass::Strong
    } else if all_at_least_one && some_known_many {
        LimitClass::WeakOnly
    } else if all_at_most_one && some_zero && !any_unknown {
        LimitClass::SublimitOnly
    } else if some_zero && some_known_many {
        LimitClass::None
    } else {
        LimitClass::Inconclusive
    };

    Ok(LimitReport {
        classification,
        competitors: outcomes,
    })
}

/// Classifies a cocone: limit classification for the dual diagram.
pub fn classify_colimit(
    d: &Diagram,
    cocone: &Cone,
    m: &BTreeSet<ArrId>,
    max_len: usize,
) -> Result<LimitReport, ConeError> {
    classify_limit(&d.dual(), cocone, m, max_len)
}

/// All `m`-paths from `start` of exactly the given length.
fn exact_length_paths(p: &Plot, m: &BTreeSet<ArrId>, start: &ObjId, len: usize) -> Vec<Vec<ArrId>> {
    let mut by_src: BTreeMap<&ObjId, Vec<&ArrId>> = BTreeMap::new();
    for f in m {
        by_src
            .entry(p.src(f).expect("validated arrow"))
            .or_default()
            .push(f);
    }
    let empty: Vec<&ArrId> = Vec::new();
    let mut partial: Vec<Vec<ArrId>> = by_src
        .get(start)
        .unwrap_or(&empty)
        .iter()
        .map(|f| alloc::vec![(*f).clone()])
        .collect();
    for _ in 1..len {
        let mut next: Vec<Vec<ArrId>> = Vec::new();
        for path in &partial {
            let end = p
                .tgt(path.last().expect("nonempty"))
                .expect("validated arrow");
            for f in by_src.get(end).unwrap_or(&empty) {
                let mut longer = path.clone();
                longer.push((*f).clone());
                next.push(longer);
            }
        }
        partial = next;
    }
    partial
}
