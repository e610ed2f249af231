//! Command-line surface and canonical file formats for finite plots.
//!
//! The [`doc`] module defines the JSON documents: one plot per file, with
//! optional named arrow classes; punctors, natural transformations,
//! cones, and augmentation tables as small compound documents that
//! reference plot files by relative path. Parsing is strict (unknown
//! fields are rejected, the plot axioms are enforced) and emission is
//! canonical, so documents and reports are byte-stable across runs.
//!
//! The [`cli`] module dispatches the commands. Each command writes a
//! machine-readable JSON report, or a plot document for the commands
//! that construct plots, to standard output and a one-line summary to
//! standard error. Exit codes separate four outcomes: `0` success or a
//! true verdict, `1` unusable input, `2` a false verdict with a witness
//! in the report, `3` a search bound reached before an answer.
//!
//! The environment variable `PLOTKIT_SEARCH_CAP` overrides the default
//! enumeration budget of one million candidates used by the unbounded
//! searches (`paren enum`, `paths`).

pub mod cli;
pub mod doc;

pub use cli::{run_cli, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK};
pub use doc::{emit_plot, parse_plot, DocError, PlotDocument};
