//! Quandle presentations of classical links, knotted surfaces in 4-space
//! and ribbon concordances, with finite-quandle coloring invariants.
//!
//! The pipeline: diagrams (PD codes, braid words, motion-picture scripts,
//! marked-graph diagrams, banded concordance data) compile to
//! presentations of the fundamental quandle; presentations are colored
//! into finite quandles by exhaustive search; coloring counts are the
//! computable invariant used to test concordance consequences.

pub mod battery;
pub mod braid;
pub mod concordance;
pub mod error;
pub mod free;
pub mod group;
pub mod link;
pub mod marked;
pub mod movie;
pub mod presentation;
pub mod quandle;

pub use braid::{torus_knot_braid, BraidWord};
pub use concordance::{obstruct_ribbon_concordance, RibbonConcordanceDiagram, Verdict};
pub use error::{Error, Result};
pub use free::{FreeQuandleElement, FreeWord, Letter, Symbol};
pub use link::{parse_pd, Crossing, LinkDiagram};
pub use marked::{MarkedGraphDiagram, Side};
pub use movie::{movie_presentation, MovieEvent, MovieScript};
pub use presentation::{ColoringReport, QuandlePresentation};
pub use quandle::{verify_axioms, AxiomReport, FiniteQuandle, QuandleMap};
