//! Argument parsing, command dispatch, reports, and exit codes.
//!
//! Every command reads documents named on the command line, writes one
//! machine-readable JSON report (or a plot document, for the commands
//! that construct plots) to standard output, and a one-line human
//! summary to standard error. Reports are canonical: sorted keys, two
//! space indentation, a trailing newline, and no environment-dependent
//! content, so identical inputs produce byte-identical output.
//!
//! Exit codes: `0` success (or the checked property holds), `1` input
//! error, `2` the checked property is false (the report carries a
//! witness), `3` inconclusive because a search bound was reached.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plotkit_core::arrows::{
    classify_arrows, default_power_bound, order_of, ArrowClass, ArrowClasses, OrderResult,
};
use plotkit_core::connect::{
    bounded_path_plot, classify_limit, m_components, skeleton, Cone, ConeError, Diagram,
    LimitClass, MediationCount,
};
use plotkit_core::construct::{
    augment, conditional_unitize, coproduct, deunitize, force_unitize, product, validate_nt,
    ConstructError,
};
use plotkit_core::paren::{enumerate_parens, eval_paren, Paren};
use plotkit_core::plot::Plot;
use plotkit_core::punctor::{classify_punctor, is_functor};
use plotkit_core::subplot::{generated_subplot, is_compositive, is_subplot, GenMode};

use crate::doc::{self, DocError, PlotDocument};

/// The command succeeded; for a check, the property holds.
pub const EXIT_OK: i32 = 0;
/// A document was missing, malformed, or otherwise unusable.
pub const EXIT_INPUT: i32 = 1;
/// The checked property is false; the report carries a witness.
pub const EXIT_FALSE: i32 = 2;
/// A search bound was reached before the question could be settled.
pub const EXIT_INCONCLUSIVE: i32 = 3;

const DEFAULT_SEARCH_CAP: u128 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "plotkit",
    version,
    about = "Inspect, classify, and transform finite plots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a plot document against the axioms
    Check { plot: PathBuf },
    /// Report the structural hierarchy and associativity profile
    Classify { plot: PathBuf },
    /// List the local identities by object
    Identities { plot: PathBuf },
    /// Report per-arrow classes, one class's members, or one arrow
    Arrows {
        plot: PathBuf,
        /// List the members of this class instead
        #[arg(long, conflicts_with = "arrow")]
        class: Option<String>,
        /// Report this single arrow instead
        #[arg(long)]
        arrow: Option<String>,
    },
    /// Emit the dual plot
    Dual { plot: PathBuf },
    /// Check a subplot inclusion, or cut a generated subplot
    Subplot {
        plot: PathBuf,
        /// Check `plot` as a subplot of this parent instead of generating
        #[arg(long, conflicts_with_all = ["objects", "arrows", "mode"])]
        of: Option<PathBuf>,
        /// Comma separated object ids to generate from
        #[arg(long)]
        objects: Option<String>,
        /// Comma separated arrow ids to generate from
        #[arg(long)]
        arrows: Option<String>,
        /// Closure regime for generation
        #[arg(long, value_enum, default_value_t = ModeArg::Smallest)]
        mode: ModeArg,
    },
    /// Check that an arrow class is closed under composition
    Compositive {
        plot: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Adjoin local identities
    Unitize {
        plot: PathBuf,
        /// `forced` adjoins at every object, `conditional` only where
        /// none exists
        #[arg(long, value_enum, default_value_t = UnitizeMode::Forced)]
        mode: UnitizeMode,
    },
    /// Drop all local identities
    Deunitize { plot: PathBuf },
    /// Emit the product of two or more plots
    Product {
        #[arg(required = true, num_args = 2..)]
        plots: Vec<PathBuf>,
    },
    /// Emit the coproduct of two or more plots
    Coproduct {
        #[arg(required = true, num_args = 2..)]
        plots: Vec<PathBuf>,
    },
    /// Emit the augmentation of a plot by an indexing operation
    Augment {
        plot: PathBuf,
        /// Augmentation table document
        #[arg(long)]
        table: PathBuf,
    },
    /// Validate a punctor document
    PunctorCheck { punctor: PathBuf },
    /// Classify a valid punctor document
    PunctorClassify {
        punctor: PathBuf,
        /// Target-plot class parameterizing density
        #[arg(long)]
        class: Option<String>,
    },
    /// Validate a natural transformation document
    NtCheck { nt: PathBuf },
    /// List the object classes connected through a class of arrows
    Components {
        plot: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
    /// Emit the subplot spanned by one object per connected class
    Skeleton {
        plot: PathBuf,
        #[arg(long)]
        class: Option<String>,
    },
    /// Find the index and period of an endomorphism under its powers
    Order {
        plot: PathBuf,
        #[arg(long)]
        arrow: String,
        /// Largest index to try; defaults to the arrow count plus one
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest period to try; defaults to the arrow count plus one
        #[arg(long)]
        max_p: Option<usize>,
    },
    /// Emit the plot of bounded-length paths through a class
    Paths {
        plot: PathBuf,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        max_len: usize,
    },
    /// Classify a cone over a diagram against the limit hierarchy
    Limit {
        cone: PathBuf,
        /// Diagram document: a punctor out of a quiver shape
        #[arg(long)]
        diagram: PathBuf,
        /// Class the mediating factorizations draw from
        #[arg(long)]
        class: Option<String>,
        /// Longest mediating factorization to count exactly
        #[arg(long)]
        max_len: usize,
    },
    /// Enumerate parenthesizations or evaluate one in a plot
    Paren {
        #[command(subcommand)]
        which: ParenCommand,
    },
}

#[derive(Subcommand)]
enum ParenCommand {
    /// List every parenthesization with the given number of leaves
    Enum { n: usize },
    /// Evaluate a sequence of arrows under a parenthesization
    Eval {
        plot: PathBuf,
        /// The tree in bullet syntax, e.g. ((••)•)
        #[arg(long)]
        tree: String,
        /// Comma separated arrow ids, one per leaf
        #[arg(long)]
        args: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Smallest,
    Identitive,
    Relative,
    Hom,
    Obj,
    Wide,
    Full,
}

impl ModeArg {
    fn gen_mode(self) -> GenMode {
        match self {
            ModeArg::Smallest => GenMode::Smallest,
            ModeArg::Identitive => GenMode::Identitive,
            ModeArg::Relative => GenMode::Relative,
            ModeArg::Hom => GenMode::Hom,
            ModeArg::Obj => GenMode::Obj,
            ModeArg::Wide => GenMode::Wide,
            ModeArg::Full => GenMode::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitizeMode {
    Forced,
    Conditional,
}

/// An input-level failure; always maps to [`EXIT_INPUT`].
enum Failure {
    Doc { path: PathBuf, error: DocError },
    Usage(String),
    Io(io::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Doc { path, error } => write!(w, "{}: {error}", path.display()),
            Failure::Usage(message) => w.write_str(message),
            Failure::Io(e) => e.fmt(w),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Io(e)
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

/// Runs one command. `argv` starts with the program name, as from
/// `std::env::args`. Reports go to `out`, summaries and errors to `err`;
/// the return value is the process exit code.
pub fn run_cli(argv: &[&str], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            EXIT_INPUT
        }
    }
}

fn report(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit(out: &mut dyn Write, p: &Plot) -> Result<(), Failure> {
    write!(out, "{}", doc::emit_plot(p))?;
    Ok(())
}

fn load(path: &Path) -> Result<(PlotDocument, Plot), Failure> {
    doc::load_plot(path).map_err(|error| Failure::Doc {
        path: path.to_path_buf(),
        error,
    })
}

fn located(path: &Path) -> impl FnOnce(DocError) -> Failure + '_ {
    move |error| Failure::Doc {
        path: path.to_path_buf(),
        error,
    }
}

/// Resolves a `--class` name: a class declared in the document wins,
/// then the built-in arrow class names, then `all`/`hom` for the whole
/// arrow set. No name at all also means the whole arrow set.
fn resolve_class(
    document: &PlotDocument,
    plot: &Plot,
    name: Option<&str>,
) -> Result<(String, BTreeSet<String>), Failure> {
    let all = || plot.arrows().keys().cloned().collect::<BTreeSet<_>>();
    let Some(name) = name else {
        return Ok(("all".to_string(), all()));
    };
    if let Some(members) = document.class(name) {
        return Ok((name.to_string(), members));
    }
    if name == "all" || name == "hom" {
        return Ok(("all".to_string(), all()));
    }
    if let Some(class) = ArrowClass::parse(name) {
        return Ok((name.to_ascii_lowercase(), classify_arrows(plot).members(class)));
    }
    let builtin: Vec<&str> = ArrowClass::ALL.iter().map(|c| c.name()).collect();
    Err(usage(format!(
        "unknown class {name:?}: not declared in the document and not one of all, {}",
        builtin.join(", ")
    )))
}

fn id_set(text: &str) -> BTreeSet<String> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn id_vec(text: &str) -> Vec<String> {
    text.split(',')
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// The enumeration budget: `PLOTKIT_SEARCH_CAP` when set, else one
/// million candidates.
fn search_cap() -> Result<u128, Failure> {
    match std::env::var("PLOTKIT_SEARCH_CAP") {
        Ok(text) => text.trim().parse().map_err(|_| {
            usage(format!(
                "PLOTKIT_SEARCH_CAP must be a nonnegative integer, got {text:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEARCH_CAP),
        Err(e) => Err(usage(format!("PLOTKIT_SEARCH_CAP: {e}"))),
    }
}

fn classes_value(c: &ArrowClasses) -> Value {
    let mut map = serde_json::Map::new();
    for (name, value) in c.flags() {
        map.insert(name.to_string(), Value::Bool(value));
    }
    map.insert("left_inverses".to_string(), json!(c.left_inverses));
    map.insert("right_inverses".to_string(), json!(c.right_inverses));
    map.insert("strong_inverse".to_string(), json!(c.strong_inverse));
    Value::Object(map)
}

fn count_value(count: MediationCount) -> Value {
    match count {
        MediationCount::Exactly(n) => json!({ "exactly": n }),
        MediationCount::AtLeastOne => json!({ "at_least": 1 }),
    }
}

fn catalan(n: usize) -> Option<u128> {
    // Trees with n leaves, i.e. the (n-1)-st Catalan number.
    if n == 0 {
        return Some(0);
    }
    let mut c: u128 = 1;
    for k in 0..(n - 1) as u128 {
        c = c.checked_mul(2 * (2 * k + 1))?;
        c /= k + 2;
    }
    Some(c)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Check { plot } => {
            let text = fs::read_to_string(&plot).map_err(|source| Failure::Doc {
                path: plot.clone(),
                error: DocError::Io {
                    path: plot.clone(),
                    source,
                },
            })?;
            let document = doc::parse_plot_syntactic(&text).map_err(located(&plot))?;
            match document.to_plot() {
                Ok(p) => {
                    report(
                        out,
                        &json!({
                            "arrows": p.arrow_count(),
                            "command": "check",
                            "comp": p.comp().len(),
                            "objects": p.object_count(),
                            "ok": true,
                        }),
                    )?;
                    writeln!(
                        err,
                        "valid plot: {} objects, {} arrows, {} composites",
                        p.object_count(),
                        p.arrow_count(),
                        p.comp().len()
                    )?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    let violations = e
                        .issues()
                        .map(<[String]>::to_vec)
                        .unwrap_or_else(|| vec![e.to_string()]);
                    report(
                        out,
                        &json!({
                            "command": "check",
                            "ok": false,
                            "violations": violations,
                        }),
                    )?;
                    writeln!(err, "invalid plot: {} violations", violations.len())?;
                    Ok(EXIT_FALSE)
                }
            }
        }

        Command::Classify { plot } => {
            let (_, p) = load(&plot)?;
            let r = p.classify();
            let mut flags = serde_json::Map::new();
            for (name, value) in r.flags() {
                flags.insert(name.to_string(), Value::Bool(value));
            }
            let mut profile = serde_json::Map::new();
            for (name, value) in r.profile.flags() {
                profile.insert(name.to_string(), Value::Bool(value));
            }
            let counterexamples: BTreeMap<String, [&String; 3]> = r
                .profile
                .counterexamples
                .iter()
                .map(|(name, (x, y, z))| (name.to_string(), [x, y, z]))
                .collect();
            let witnesses: BTreeMap<String, String> = r
                .witnesses
                .iter()
                .map(|(name, w)| (name.to_string(), w.to_string()))
                .collect();
            report(
                out,
                &json!({
                    "command": "classify",
                    "flags": flags,
                    "identities": r.identity_map,
                    "profile": profile,
                    "profile_counterexamples": counterexamples,
                    "unital_objects": r.unital_objects,
                    "witnesses": witnesses,
                }),
            )?;
            let adjective = if r.is_category {
                "category"
            } else if r.is_semicategory {
                "semicategory"
            } else if r.is_semigroupoid {
                "semigroupoid"
            } else if r.is_magmoid {
                "magmoid"
            } else if r.is_quiver {
                "quiver"
            } else {
                "plot"
            };
            writeln!(
                err,
                "{adjective}: {} objects, {} arrows, {} composites",
                p.object_count(),
                p.arrow_count(),
                p.comp().len()
            )?;
            Ok(EXIT_OK)
        }

        Command::Identities { plot } => {
            let (_, p) = load(&plot)?;
            let identities = p.compute_identities();
            report(
                out,
                &json!({
                    "command": "identities",
                    "identities": identities,
                }),
            )?;
            writeln!(
                err,
                "{} local identities on {} objects",
                identities.len(),
                p.object_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Arrows { plot, class, arrow } => {
            let (document, p) = load(&plot)?;
            let classified = classify_arrows(&p);
            if let Some(id) = arrow {
                let c = classified
                    .get(&id)
                    .ok_or_else(|| usage(format!("unknown arrow {id:?}")))?;
                report(
                    out,
                    &json!({
                        "arrow": id,
                        "classes": classes_value(c),
                        "command": "arrows",
                    }),
                )?;
                let held: Vec<&str> = c
                    .flags()
                    .iter()
                    .filter(|(_, v)| *v)
                    .map(|(n, _)| *n)
                    .collect();
                writeln!(err, "arrow {id:?}: {}", held.join(", "))?;
                return Ok(EXIT_OK);
            }
            if let Some(name) = class {
                let (label, members) = resolve_class(&document, &p, Some(&name))?;
                report(
                    out,
                    &json!({
                        "class": label,
                        "command": "arrows",
                        "members": members,
                    }),
                )?;
                writeln!(err, "{} arrows in class {label:?}", members.len())?;
                return Ok(EXIT_OK);
            }
            let table: BTreeMap<&String, Value> = classified
                .arrows
                .iter()
                .map(|(id, c)| (id, classes_value(c)))
                .collect();
            report(
                out,
                &json!({
                    "arrows": table,
                    "command": "arrows",
                }),
            )?;
            writeln!(err, "classified {} arrows", table.len())?;
            Ok(EXIT_OK)
        }

        Command::Dual { plot } => {
            let (_, p) = load(&plot)?;
            let d = p.dual();
            emit(out, &d)?;
            writeln!(
                err,
                "dual: {} objects, {} arrows",
                d.object_count(),
                d.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Subplot {
            plot,
            of,
            objects,
            arrows,
            mode,
        } => {
            let (_, p) = load(&plot)?;
            if let Some(parent_path) = of {
                let (_, parent) = load(&parent_path)?;
                let r = is_subplot(&p, &parent);
                let mut value = json!({
                    "command": "subplot",
                    "is_full": r.is_full,
                    "is_identitive": r.is_identitive,
                    "is_proper": r.is_proper,
                    "is_subplot": r.is_subplot,
                    "is_wide": r.is_wide,
                });
                if let Some(v) = &r.violation {
                    value["violation"] = json!(format!("{v:?}"));
                }
                report(out, &value)?;
                if r.is_subplot {
                    writeln!(err, "subplot of {}", parent_path.display())?;
                    Ok(EXIT_OK)
                } else {
                    writeln!(err, "not a subplot of {}", parent_path.display())?;
                    Ok(EXIT_FALSE)
                }
            } else {
                let objs = objects.as_deref().map(id_set).unwrap_or_default();
                let arrs = arrows.as_deref().map(id_set).unwrap_or_default();
                let q = generated_subplot(&p, &objs, &arrs, mode.gen_mode());
                emit(out, &q)?;
                writeln!(
                    err,
                    "generated subplot: {} objects, {} arrows",
                    q.object_count(),
                    q.arrow_count()
                )?;
                Ok(EXIT_OK)
            }
        }

        Command::Compositive { plot, class } => {
            let (document, p) = load(&plot)?;
            let (label, members) = resolve_class(&document, &p, Some(&class))?;
            let (closed, witness) =
                is_compositive(&p, &members).map_err(|e| usage(e.to_string()))?;
            if closed {
                report(
                    out,
                    &json!({
                        "class": label,
                        "closed": true,
                        "command": "compositive",
                    }),
                )?;
                writeln!(err, "class {label:?} is closed under composition")?;
                Ok(EXIT_OK)
            } else {
                let (f, g) = witness.expect("open class has a witness");
                report(
                    out,
                    &json!({
                        "class": label,
                        "closed": false,
                        "command": "compositive",
                        "witness": [&f, &g],
                    }),
                )?;
                writeln!(
                    err,
                    "class {label:?} is not closed: ({f:?}, {g:?}) composes outside it"
                )?;
                Ok(EXIT_FALSE)
            }
        }

        Command::Unitize { plot, mode } => {
            let (_, p) = load(&plot)?;
            let u = match mode {
                UnitizeMode::Forced => force_unitize(&p),
                UnitizeMode::Conditional => conditional_unitize(&p),
            }
            .map_err(|e| usage(e.to_string()))?;
            emit(out, &u)?;
            writeln!(
                err,
                "unitized: {} objects, {} arrows",
                u.object_count(),
                u.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Deunitize { plot } => {
            let (_, p) = load(&plot)?;
            let d = deunitize(&p);
            emit(out, &d)?;
            writeln!(
                err,
                "deunitized: {} objects, {} arrows",
                d.object_count(),
                d.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Product { plots } => {
            let mut factors = Vec::with_capacity(plots.len());
            for path in &plots {
                factors.push(load(path)?.1);
            }
            let (prod, _) = product(&factors);
            emit(out, &prod)?;
            writeln!(
                err,
                "product of {} plots: {} objects, {} arrows",
                factors.len(),
                prod.object_count(),
                prod.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Coproduct { plots } => {
            let mut summands = Vec::with_capacity(plots.len());
            for path in &plots {
                summands.push(load(path)?.1);
            }
            let (cop, _) = coproduct(&summands);
            emit(out, &cop)?;
            writeln!(
                err,
                "coproduct of {} plots: {} objects, {} arrows",
                summands.len(),
                cop.object_count(),
                cop.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Augment { plot, table } => {
            let (_, p) = load(&plot)?;
            let aug = doc::load_augment(&table).map_err(located(&table))?;
            let indices: BTreeSet<String> = aug.indices.iter().cloned().collect();
            let mut zeta = BTreeMap::new();
            for [i, j, k] in &aug.zeta {
                if zeta
                    .insert((i.clone(), j.clone()), k.clone())
                    .is_some()
                {
                    return Err(usage(format!(
                        "the augmentation table assigns ({i:?}, {j:?}) more than once"
                    )));
                }
            }
            let a = augment(&p, &indices, &zeta).map_err(|e| usage(e.to_string()))?;
            emit(out, &a)?;
            writeln!(
                err,
                "augmented by {} indices: {} arrows",
                indices.len(),
                a.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::PunctorCheck { punctor } => {
            let loaded = doc::load_punctor(&punctor).map_err(located(&punctor))?;
            match &loaded.punctor {
                Ok(f) => {
                    report(
                        out,
                        &json!({
                            "command": "punctor-check",
                            "is_functor": is_functor(f),
                            "ok": true,
                        }),
                    )?;
                    writeln!(err, "valid punctor")?;
                    Ok(EXIT_OK)
                }
                Err(violations) => {
                    report(
                        out,
                        &json!({
                            "command": "punctor-check",
                            "ok": false,
                            "violations": violations,
                        }),
                    )?;
                    writeln!(err, "not a punctor: {} violations", violations.len())?;
                    Ok(EXIT_FALSE)
                }
            }
        }

        Command::PunctorClassify { punctor, class } => {
            let loaded = doc::load_punctor(&punctor).map_err(located(&punctor))?;
            let f = loaded.punctor.map_err(|violations| {
                usage(format!(
                    "not a punctor: {}",
                    violations.join("; ")
                ))
            })?;
            let (label, members) = match &class {
                Some(name) => {
                    let (label, members) =
                        resolve_class(&loaded.target.0, &loaded.target.1, Some(name))?;
                    (Some(label), Some(members))
                }
                None => (None, None),
            };
            let r = classify_punctor(&f, members.as_ref()).map_err(|e| usage(e.to_string()))?;
            report(
                out,
                &json!({
                    "class": label,
                    "command": "punctor-classify",
                    "flags": {
                        "coconstant": r.coconstant,
                        "constant": r.constant,
                        "embedding": r.embedding,
                        "faithful": r.faithful,
                        "full": r.full,
                        "fully_faithful": r.fully_faithful,
                        "injective_on_objects": r.injective_on_objects,
                        "is_unital": r.is_unital,
                        "isomorphism": r.isomorphism,
                        "m_dense": r.m_dense,
                        "m_equivalence": r.m_equivalence,
                        "surjective_on_objects": r.surjective_on_objects,
                    },
                }),
            )?;
            writeln!(
                err,
                "punctor: faithful={} full={} isomorphism={}",
                r.faithful, r.full, r.isomorphism
            )?;
            Ok(EXIT_OK)
        }

        Command::NtCheck { nt } => {
            let (document, from, to) = doc::load_nt(&nt).map_err(located(&nt))?;
            match validate_nt(&from, &to, &document.components) {
                Ok(_) => {
                    report(
                        out,
                        &json!({
                            "command": "nt-check",
                            "components": document.components,
                            "ok": true,
                        }),
                    )?;
                    writeln!(err, "valid natural transformation")?;
                    Ok(EXIT_OK)
                }
                Err(ConstructError::InvalidNt(violations)) => {
                    let violations: Vec<String> =
                        violations.iter().map(|v| v.to_string()).collect();
                    report(
                        out,
                        &json!({
                            "command": "nt-check",
                            "ok": false,
                            "violations": violations,
                        }),
                    )?;
                    writeln!(
                        err,
                        "not a natural transformation: {} violations",
                        violations.len()
                    )?;
                    Ok(EXIT_FALSE)
                }
                Err(ConstructError::NotParallel) => {
                    report(
                        out,
                        &json!({
                            "command": "nt-check",
                            "ok": false,
                            "violations": ["the punctors are not parallel"],
                        }),
                    )?;
                    writeln!(err, "not a natural transformation: punctors not parallel")?;
                    Ok(EXIT_FALSE)
                }
                Err(e) => Err(usage(e.to_string())),
            }
        }

        Command::Components { plot, class } => {
            let (document, p) = load(&plot)?;
            let (label, members) = resolve_class(&document, &p, class.as_deref())?;
            let components =
                m_components(&p, &members).map_err(|e| usage(e.to_string()))?;
            let classes: Vec<&BTreeSet<String>> =
                components.iter().map(|(objs, _)| objs).collect();
            report(
                out,
                &json!({
                    "class": label,
                    "command": "components",
                    "components": classes,
                }),
            )?;
            writeln!(
                err,
                "{} equivalence classes over {} objects",
                classes.len(),
                p.object_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Skeleton { plot, class } => {
            let (document, p) = load(&plot)?;
            let (_, members) = resolve_class(&document, &p, class.as_deref())?;
            let sk = skeleton(&p, &members).map_err(|e| usage(e.to_string()))?;
            emit(out, &sk)?;
            writeln!(
                err,
                "skeleton: {} of {} objects survive",
                sk.object_count(),
                p.object_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Order {
            plot,
            arrow,
            max_n,
            max_p,
        } => {
            let (_, p) = load(&plot)?;
            let bound = default_power_bound(&p);
            let max_n = max_n.unwrap_or(bound);
            let max_p = max_p.unwrap_or(bound);
            match order_of(&p, &arrow, max_n, max_p).map_err(|e| usage(e.to_string()))? {
                OrderResult::Periodic {
                    index,
                    period,
                    order,
                } => {
                    report(
                        out,
                        &json!({
                            "arrow": arrow,
                            "command": "order",
                            "index": index,
                            "max_n": max_n,
                            "max_p": max_p,
                            "order": order,
                            "period": period,
                            "periodic": true,
                        }),
                    )?;
                    writeln!(err, "index {index}, period {period}, order {order}")?;
                    Ok(EXIT_OK)
                }
                OrderResult::NotPeriodicWithinBounds { max_n, max_p } => {
                    report(
                        out,
                        &json!({
                            "arrow": arrow,
                            "command": "order",
                            "max_n": max_n,
                            "max_p": max_p,
                            "periodic": false,
                        }),
                    )?;
                    writeln!(
                        err,
                        "no periodicity within n <= {max_n}, p <= {max_p} (inconclusive)"
                    )?;
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }

        Command::Paths {
            plot,
            class,
            max_len,
        } => {
            let (document, p) = load(&plot)?;
            let (label, members) = resolve_class(&document, &p, class.as_deref())?;
            let cap = search_cap()?;
            let mut estimate: u128 = 0;
            let size = members.len() as u128;
            let mut power: u128 = 1;
            for _ in 0..max_len {
                power = power.saturating_mul(size);
                estimate = estimate.saturating_add(power);
            }
            if estimate > cap {
                report(
                    out,
                    &json!({
                        "cap": cap,
                        "class": label,
                        "command": "paths",
                        "estimate": estimate,
                        "truncated": true,
                    }),
                )?;
                writeln!(
                    err,
                    "up to {estimate} paths exceed the search cap of {cap} (inconclusive)"
                )?;
                return Ok(EXIT_INCONCLUSIVE);
            }
            let q = bounded_path_plot(&p, &members, max_len).map_err(|e| usage(e.to_string()))?;
            emit(out, &q)?;
            writeln!(
                err,
                "paths through {label:?} up to length {max_len}: {} arrows",
                q.arrow_count()
            )?;
            Ok(EXIT_OK)
        }

        Command::Limit {
            cone,
            diagram,
            class,
            max_len,
        } => {
            let cone_doc = doc::load_cone(&cone).map_err(located(&cone))?;
            let loaded = doc::load_punctor(&diagram).map_err(located(&diagram))?;
            let punctor = loaded.punctor.map_err(|violations| {
                usage(format!(
                    "the diagram is not a valid punctor: {}",
                    violations.join("; ")
                ))
            })?;
            let d = Diagram::new(punctor).map_err(|e| usage(e.to_string()))?;
            let (label, members) =
                resolve_class(&loaded.target.0, &loaded.target.1, class.as_deref())?;
            let checked = Cone {
                apex: cone_doc.apex,
                legs: cone_doc.legs,
            };
            let r = match classify_limit(&d, &checked, &members, max_len) {
                Ok(r) => r,
                Err(ConeError::InvalidCone(violations)) => {
                    let issues: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                    return Err(usage(format!("not a cone: {}", issues.join("; "))));
                }
                Err(e) => return Err(usage(e.to_string())),
            };
            let competitors: Vec<Value> = r
                .competitors
                .iter()
                .map(|c| {
                    json!({
                        "apex": c.apex,
                        "count": count_value(c.count),
                        "legs": c.legs,
                    })
                })
                .collect();
            report(
                out,
                &json!({
                    "class": label,
                    "classification": r.classification.name(),
                    "command": "limit",
                    "competitors": competitors,
                    "max_len": max_len,
                }),
            )?;
            writeln!(
                err,
                "{} ({} competitors checked)",
                r.classification.name(),
                r.competitors.len()
            )?;
            Ok(match r.classification {
                LimitClass::Strong => EXIT_OK,
                LimitClass::Inconclusive => EXIT_INCONCLUSIVE,
                _ => EXIT_FALSE,
            })
        }

        Command::Paren { which } => match which {
            ParenCommand::Enum { n } => {
                let cap = search_cap()?;
                let count = catalan(n);
                if count.map_or(true, |c| c > cap) {
                    report(
                        out,
                        &json!({
                            "cap": cap,
                            "command": "paren-enum",
                            "count": count,
                            "n": n,
                            "trees": Value::Null,
                        }),
                    )?;
                    writeln!(err, "enumeration exceeds the search cap of {cap}")?;
                    return Ok(EXIT_INCONCLUSIVE);
                }
                let trees = enumerate_parens(n).map_err(|e| usage(e.to_string()))?;
                let rendered: Vec<String> = trees.iter().map(Paren::to_string).collect();
                report(
                    out,
                    &json!({
                        "command": "paren-enum",
                        "count": rendered.len(),
                        "n": n,
                        "trees": rendered,
                    }),
                )?;
                writeln!(err, "{} parenthesizations of {n} leaves", rendered.len())?;
                Ok(EXIT_OK)
            }
            ParenCommand::Eval { plot, tree, args } => {
                let (_, p) = load(&plot)?;
                let parsed = Paren::parse(&tree).map_err(|e| usage(e.to_string()))?;
                let arguments = id_vec(&args);
                let value = eval_paren(&p, &parsed, &arguments)
                    .map_err(|e| usage(e.to_string()))?;
                report(
                    out,
                    &json!({
                        "args": arguments,
                        "command": "paren-eval",
                        "tree": parsed.to_string(),
                        "value": value,
                    }),
                )?;
                match &value {
                    Some(v) => writeln!(err, "value: {v:?}")?,
                    None => writeln!(err, "undefined")?,
                }
                Ok(EXIT_OK)
            }
        },
    }
}
