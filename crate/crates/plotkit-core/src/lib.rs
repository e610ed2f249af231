//! Finite plots: object/arrow structures whose composition is a *partial*
//! binary operation required only to respect endpoints.
//!
//! A plot is a 5-tuple (objects, arrows, src, tgt, comp) where `comp` is a
//! finite partial map on pairs of arrows. Nothing else is assumed: no
//! associativity, no identities, no totality on endpoint-compatible pairs.
//! Categories, semicategories, quivers, and one-object magmas all arise as
//! special cases, and the crate classifies a given plot against that
//! hierarchy.
//!
//! The crate is organized bottom-up:
//!
//! * [`plot`] — the data model, axiom validation, identity derivation,
//!   associativity profiling, duality, hom queries, regular representations,
//!   and degrees;
//! * [`paren`] — fundamental parenthesizations (full binary trees), their
//!   enumeration, substitution, and partial evaluation in a plot, plus
//!   class products;
//! * [`subplot`] — subplot predicates and the generated/relative subplot
//!   constructions;
//! * [`arrows`] — per-arrow classification (monic, epic, split, invertible,
//!   neutral, constant, ...), inverses, derived arrow-class plots, and
//!   endomorphism periodicity;
//! * [`punctor`] — structure-preserving maps between plots, their images,
//!   restrictions, classification, and enumeration;
//! * [`construct`] — unitization and deunitization, products, coproducts,
//!   augmentations, natural transformations, and punctor plots;
//! * [`connect`] — contiguity, class connections and paths, factorization
//!   plots, equivalence of objects, skeletons, and bounded limit checking.
//!
//! Everything operates on explicit finite data and is pure: no operation
//! mutates a plot, and every search is deterministic.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arrows;
pub mod connect;
pub mod construct;
pub mod paren;
pub mod plot;
pub mod punctor;
pub mod subplot;

pub use paren::Paren;
pub use plot::{
    AssociativityProfile, ClassificationReport, Plot, PlotError, PlotViolation, RawPlot,
};
pub use punctor::Punctor;
