//! Fundamental parenthesizations: full binary trees that schedule how a
//! tuple of arrows is composed.
//!
//! A parenthesization of length `n` has `n` leaves; evaluating it on an
//! `n`-tuple of arrows composes the tuple in the tree's order, and is
//! partial: an inner composite may be undefined, in which case the whole
//! evaluation is undefined. Undefined is a normal result here, not an error.
//!
//! The canonical text syntax writes a leaf as `•` and a node as the
//! concatenation of its children in parentheses, e.g. `(•(••))`.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::plot::{ArrId, Plot, PlotError};

/// A fundamental parenthesization: a full binary tree over anonymous leaves.
///
/// Every tree of length `n ≥ 2` splits uniquely into its two children, which
/// is what makes substitution and evaluation well defined.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Paren {
    Leaf,
    Node(Box<Paren>, Box<Paren>),
}

/// Error from parenthesization operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParenError {
    /// Length-0 parenthesizations do not exist.
    ZeroLength,
    /// An argument list does not match the tree's leaf count.
    ArityMismatch { expected: usize, got: usize },
    /// An argument names a missing arrow.
    UnknownArrow(String),
    /// The text form is malformed; the position is a byte offset.
    Parse {
        position: usize,
        message: &'static str,
    },
}

impl fmt::Display for ParenError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParenError::ZeroLength => write!(w, "parenthesizations have length at least 1"),
            ParenError::ArityMismatch { expected, got } => {
                write!(w, "expected {expected} arguments, got {got}")
            }
            ParenError::UnknownArrow(a) => write!(w, "unknown arrow {a:?}"),
            ParenError::Parse { position, message } => {
                write!(w, "parse error at byte {position}: {message}")
            }
        }
    }
}

impl core::error::Error for ParenError {}

impl Paren {
    pub fn leaf() -> Paren {
        Paren::Leaf
    }

    pub fn node(left: Paren, right: Paren) -> Paren {
        Paren::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn len(&self) -> usize {
        match self {
            Paren::Leaf => 1,
            Paren::Node(l, r) => l.len() + r.len(),
        }
    }

    /// Always false; a tree has at least one leaf.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The unique splitting of a tree of length at least 2.
    pub fn split(&self) -> Option<(&Paren, &Paren)> {
        match self {
            Paren::Leaf => None,
            Paren::Node(l, r) => Some((l, r)),
        }
    }

    /// Parses the canonical text syntax: `•` is a leaf, `(TT)` a node.
    pub fn parse(text: &str) -> Result<Paren, ParenError> {
        fn tree(bytes: &[u8], pos: usize) -> Result<(Paren, usize), ParenError> {
            match bytes.get(pos) {
                Some(b'(') => {
                    let (left, pos) = tree(bytes, pos + 1)?;
                    let (right, pos) = tree(bytes, pos)?;
                    match bytes.get(pos) {
                        Some(b')') => Ok((Paren::node(left, right), pos + 1)),
                        _ => Err(ParenError::Parse {
                            position: pos,
                            message: "expected ')'",
                        }),
                    }
                }
                // '•' is U+2022, encoded as e2 80 a2.
                Some(0xe2)
                    if bytes.get(pos + 1) == Some(&0x80) && bytes.get(pos + 2) == Some(&0xa2) =>
                {
                    Ok((Paren::Leaf, pos + 3))
                }
                _ => Err(ParenError::Parse {
                    position: pos,
                    message: "expected '•' or '('",
                }),
            }
        }
        let bytes = text.as_bytes();
        let (tree, end) = tree(bytes, 0)?;
        if end != bytes.len() {
            return Err(ParenError::Parse {
                position: end,
                message: "trailing input",
            });
        }
        Ok(tree)
    }
}

impl fmt::Display for Paren {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Paren::Leaf => write!(w, "•"),
            Paren::Node(l, r) => write!(w, "({l}{r})"),
        }
    }
}

/// All parenthesizations of length `n`, in canonical order: by left-split
/// length ascending, then recursively within each side. The count is the
/// `(n-1)`-st Catalan number.
pub fn enumerate_parens(n: usize) -> Result<Vec<Paren>, ParenError> {
    if n == 0 {
        return Err(ParenError::ZeroLength);
    }
    // table[k] lists the trees with k+1 leaves
    let mut table: Vec<Vec<Paren>> = Vec::with_capacity(n);
    table.push(alloc::vec![Paren::Leaf]);
    for len in 2..=n {
        let mut trees = Vec::new();
        for left_len in 1..len {
            for l in &table[left_len - 1] {
                for r in &table[len - left_len - 1] {
                    trees.push(Paren::node(l.clone(), r.clone()));
                }
            }
        }
        table.push(trees);
    }
    Ok(table.pop().expect("nonempty by construction"))
}

/// Grafts `inner[i]` onto the `i`-th leaf of `wp` (leaves numbered left to
/// right). The result's length is the sum of the inner lengths.
pub fn substitute(wp: &Paren, inner: &[Paren]) -> Result<Paren, ParenError> {
    if inner.len() != wp.len() {
        return Err(ParenError::ArityMismatch {
            expected: wp.len(),
            got: inner.len(),
        });
    }
    fn graft(wp: &Paren, inner: &[Paren]) -> Paren {
        match wp {
            Paren::Leaf => inner[0].clone(),
            Paren::Node(l, r) => {
                let k = l.len();
                Paren::node(graft(l, &inner[..k]), graft(r, &inner[k..]))
            }
        }
    }
    Ok(graft(wp, inner))
}

/// Evaluates `wp` on an arrow tuple in the plot. `Ok(None)` means the
/// composite is undefined somewhere in the tree; that is a normal result.
///
/// The evaluation of a leaf is its argument; the evaluation of a node is
/// defined when both halves evaluate and the pair of results is in the
/// domain of composition.
pub fn eval_paren(p: &Plot, wp: &Paren, args: &[ArrId]) -> Result<Option<ArrId>, ParenError> {
    if args.len() != wp.len() {
        return Err(ParenError::ArityMismatch {
            expected: wp.len(),
            got: args.len(),
        });
    }
    for a in args {
        if !p.has_arrow(a) {
            return Err(ParenError::UnknownArrow(a.clone()));
        }
    }
    fn eval(p: &Plot, wp: &Paren, args: &[ArrId]) -> Option<ArrId> {
        match wp {
            Paren::Leaf => Some(args[0].clone()),
            Paren::Node(l, r) => {
                let k = l.len();
                let lv = eval(p, l, &args[..k])?;
                let rv = eval(p, r, &args[k..])?;
                p.compose(&lv, &rv).cloned()
            }
        }
    }
    Ok(eval(p, wp, args))
}

/// The class product of arrow sets under a parenthesization: every defined
/// evaluation `wp[p](f1, ..., fn)` with `fi` drawn from `classes[i]`.
///
/// The result size is at most the product of the class sizes, and the
/// operation is monotone in each argument.
pub fn class_product(
    p: &Plot,
    classes: &[BTreeSet<ArrId>],
    wp: &Paren,
) -> Result<BTreeSet<ArrId>, PlotError> {
    if classes.len() != wp.len() {
        return Err(PlotError::LengthMismatch {
            expected: wp.len(),
            got: classes.len(),
        });
    }
    for class in classes {
        for a in class {
            if !p.has_arrow(a) {
                return Err(PlotError::UnknownArrow(a.clone()));
            }
        }
    }
    let mut out = BTreeSet::new();
    if classes.iter().any(BTreeSet::is_empty) {
        return Ok(out);
    }
    let pools: Vec<Vec<&ArrId>> = classes.iter().map(|c| c.iter().collect()).collect();
    let mut idx = alloc::vec![0usize; pools.len()];
    loop {
        let tuple: Vec<ArrId> = idx
            .iter()
            .zip(&pools)
            .map(|(&i, pool)| pool[i].clone())
            .collect();
        if let Some(v) = eval_paren(p, wp, &tuple).expect("arity and arrows pre-checked") {
            out.insert(v);
        }
        let mut slot = pools.len();
        loop {
            if slot == 0 {
                return Ok(out);
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < pools[slot].len() {
                break;
            }
            idx[slot] = 0;
        }
    }
}
