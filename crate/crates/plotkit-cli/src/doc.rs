//! Canonical JSON documents for plots and the compound inputs built on
//! top of them.
//!
//! One plot per file. Compound documents (punctors, transformations,
//! diagram fixtures) reference the plot files they depend on by path,
//! resolved relative to the directory the document itself lives in, so a
//! fixture tree can be moved as a whole.
//!
//! Emission is canonical: keys sorted, arrays in sorted id order, two
//! space pretty printing, a trailing newline. Parsing a canonical text
//! and emitting it again reproduces the bytes, which is what lets
//! reports be compared verbatim across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use plotkit_core::plot::{validate, Plot, RawPlot};
use plotkit_core::punctor::{validate_punctor, Punctor};

/// One arrow of a [`PlotDocument`]: an id with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A plot as stored on disk, plus optional named arrow classes.
///
/// Field and key order in the serialized form is alphabetical; `classes`
/// is omitted entirely when empty. `comp` entries are `[f, g, h]` triples
/// meaning `f ⋄ g = h`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotDocument {
    pub arrows: Vec<ArrowRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, Vec<String>>,
    pub comp: Vec<[String; 3]>,
    pub objects: Vec<String>,
}

/// A punctor as stored on disk. `source` and `target` are paths to plot
/// documents, relative to this document's directory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PunctorDocument {
    pub arrow_map: BTreeMap<String, String>,
    pub obj_map: BTreeMap<String, String>,
    pub source: String,
    pub target: String,
}

/// A natural transformation candidate: component arrows between two
/// punctor documents, referenced by relative path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NtDocument {
    pub components: BTreeMap<String, String>,
    pub from: String,
    pub to: String,
}

/// A cone candidate: an apex object and one leg arrow per shape object.
/// The diagram it is checked against is supplied separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDocument {
    pub apex: String,
    pub legs: BTreeMap<String, String>,
}

/// An augmentation table: an index set and a partial binary operation on
/// it, given as `[i, j, k]` triples meaning `i · j = k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentDocument {
    pub indices: Vec<String>,
    pub zeta: Vec<[String; 3]>,
}

/// Why a document could not be read, parsed, or interpreted.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// The text is not well formed for the expected document shape.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// The document is well formed but does not describe a valid value;
    /// plot issues are the core validator's verdicts verbatim.
    #[error("{}", issues.join("; "))]
    Semantic { issues: Vec<String> },
}

impl DocError {
    fn syntax(e: &serde_json::Error) -> DocError {
        DocError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }

    /// The semantic issue strings, when this is a semantic error.
    pub fn issues(&self) -> Option<&[String]> {
        match self {
            DocError::Semantic { issues } => Some(issues),
            _ => None,
        }
    }
}

fn read(path: &Path) -> Result<String, DocError> {
    fs::read_to_string(path).map_err(|source| DocError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::syntax(&e))
}

fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

impl PlotDocument {
    /// The document describing `p`, in canonical order, with no classes.
    pub fn from_plot(p: &Plot) -> PlotDocument {
        PlotDocument {
            arrows: p
                .arrows()
                .iter()
                .map(|(id, (s, t))| ArrowRecord {
                    id: id.clone(),
                    src: s.clone(),
                    tgt: t.clone(),
                })
                .collect(),
            classes: BTreeMap::new(),
            comp: p
                .comp()
                .iter()
                .map(|((f, g), h)| [f.clone(), g.clone(), h.clone()])
                .collect(),
            objects: p.objects().iter().cloned().collect(),
        }
    }

    /// Sorts every array into canonical id order and deduplicates class
    /// member lists. Emission always canonicalizes first.
    pub fn canonicalize(&mut self) {
        self.objects.sort();
        self.arrows.sort();
        self.comp.sort();
        for members in self.classes.values_mut() {
            members.sort();
            members.dedup();
        }
    }

    /// The canonical text form: sorted, pretty printed, newline
    /// terminated.
    pub fn canonical_text(&self) -> String {
        let mut doc = self.clone();
        doc.canonicalize();
        canonical_json(&doc)
    }

    /// Builds the validated plot the document describes. Errors collect
    /// the core axiom violations and any class entry that references a
    /// missing arrow.
    pub fn to_plot(&self) -> Result<Plot, DocError> {
        let raw = RawPlot {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone()))
                .collect(),
            comp: self
                .comp
                .iter()
                .map(|[f, g, h]| (f.clone(), g.clone(), h.clone()))
                .collect(),
        };
        let mut issues: Vec<String> = match validate(&raw) {
            Ok(plot) => {
                let mut issues = Vec::new();
                for (name, members) in &self.classes {
                    for id in members {
                        if !plot.has_arrow(id) {
                            issues.push(format!(
                                "class {name:?} references unknown arrow {id:?}"
                            ));
                        }
                    }
                }
                if issues.is_empty() {
                    return Ok(plot);
                }
                issues
            }
            Err(violations) => violations.iter().map(|v| v.to_string()).collect(),
        };
        issues.sort();
        Err(DocError::Semantic { issues })
    }

    /// The members of a named class as a set. `None` when the name is not
    /// declared in the document.
    pub fn class(&self, name: &str) -> Option<BTreeSet<String>> {
        self.classes
            .get(name)
            .map(|members| members.iter().cloned().collect())
    }
}

/// Parses the text of a plot document without semantic checks.
pub fn parse_plot_syntactic(text: &str) -> Result<PlotDocument, DocError> {
    from_json(text)
}

/// Parses and fully validates a plot document: well formed text, the
/// plot axioms, and class references.
pub fn parse_plot(text: &str) -> Result<PlotDocument, DocError> {
    let doc = parse_plot_syntactic(text)?;
    doc.to_plot()?;
    Ok(doc)
}

/// The canonical text of the document describing `p`.
pub fn emit_plot(p: &Plot) -> String {
    PlotDocument::from_plot(p).canonical_text()
}

/// Reads, parses, and validates a plot file.
pub fn load_plot(path: &Path) -> Result<(PlotDocument, Plot), DocError> {
    let doc = parse_plot(&read(path)?)?;
    let plot = doc.to_plot().expect("validated by parse_plot");
    Ok((doc, plot))
}

fn sibling(of: &Path, relative: &str) -> PathBuf {
    match of.parent() {
        Some(dir) => dir.join(relative),
        None => PathBuf::from(relative),
    }
}

/// A punctor document together with everything it resolved to.
pub struct LoadedPunctor {
    pub document: PunctorDocument,
    pub source: (PlotDocument, Plot),
    pub target: (PlotDocument, Plot),
    /// Present when the maps satisfy the punctor laws; the violations
    /// otherwise.
    pub punctor: Result<Punctor, Vec<String>>,
}

/// Reads a punctor document and the two plot files it references. The
/// punctor laws are checked but a violation is reported inside the
/// result rather than as an error, so callers can decide whether an
/// invalid punctor is a verdict or bad input.
pub fn load_punctor(path: &Path) -> Result<LoadedPunctor, DocError> {
    let document: PunctorDocument = from_json(&read(path)?)?;
    let source = load_plot(&sibling(path, &document.source))?;
    let target = load_plot(&sibling(path, &document.target))?;
    let punctor = validate_punctor(
        &source.1,
        &target.1,
        &document.obj_map,
        &document.arrow_map,
    )
    .map_err(|violations| violations.iter().map(|v| v.to_string()).collect());
    Ok(LoadedPunctor {
        document,
        source,
        target,
        punctor,
    })
}

/// Reads a natural transformation document and the two punctor files it
/// references; both punctors must themselves be valid.
pub fn load_nt(path: &Path) -> Result<(NtDocument, Punctor, Punctor), DocError> {
    let document: NtDocument = from_json(&read(path)?)?;
    let mut resolved = Vec::with_capacity(2);
    for relative in [&document.from, &document.to] {
        let loaded = load_punctor(&sibling(path, relative))?;
        match loaded.punctor {
            Ok(p) => resolved.push(p),
            Err(issues) => {
                let mut issues: Vec<String> = issues
                    .into_iter()
                    .map(|v| format!("{relative}: {v}"))
                    .collect();
                issues.sort();
                return Err(DocError::Semantic { issues });
            }
        }
    }
    let to = resolved.pop().expect("two punctors");
    let from = resolved.pop().expect("two punctors");
    Ok((document, from, to))
}

/// Reads a cone document.
pub fn load_cone(path: &Path) -> Result<ConeDocument, DocError> {
    from_json(&read(path)?)
}

/// Reads an augmentation table.
pub fn load_augment(path: &Path) -> Result<AugmentDocument, DocError> {
    from_json(&read(path)?)
}
