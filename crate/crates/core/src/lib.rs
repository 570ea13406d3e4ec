//! Exact certification of perimetric contraction conditions on finite metric
//! spaces.
//!
//! The crate decides, with arbitrary-precision rational arithmetic, whether a
//! self-map of a finite (or finitely sampled) metric space satisfies the
//! classical two-point contraction conditions (Banach, Kannan, Chatterjea),
//! their three-point perimeter analogues, and the four-point quadrilateral
//! variants. Each certification yields the tight constant together with a
//! witness tuple. The [`dynamics`] module analyses orbits and runs Picard
//! iteration with the a-priori convergence bounds that accompany the
//! four-point fixed-point theorems.
//!
//! Tuple enumeration runs on rayon when the `parallel` feature is enabled
//! (the default); [`Execution::Serial`] is always available and produces
//! bit-identical reports.

pub mod catalog;
pub mod certifier;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod instance;
pub mod map;
pub mod rational;
pub mod report;
pub mod space;

pub use certifier::{
    certify, certify_with, check_inclusions, ratio, CertificationReport, Constant,
    ContractionClass, Execution, InclusionRow, Ratio, Semantics, Verdict,
};
pub use error::{Error, Result};
pub use instance::{Image, Instance};
pub use map::{Domain, Piece, SelfMap};
pub use rational::Rational;
pub use space::{LineSpace, PointId, Space, TabulatedSpace, ValidationReport};
