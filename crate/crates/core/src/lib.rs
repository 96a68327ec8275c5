//! Exact intersection-theory kernel for counting maximal subbundles of
//! vector bundles on curves.
//!
//! A cohomology ring is given by a finite presentation ([`ring`]), Chern
//! classes and characters live in [`chern`], and [`pipeline`] assembles the
//! Porteous count for a preset. [`formulas`] has the closed-form invariants.

pub mod chern;
pub mod error;
pub mod expr;
pub mod formulas;
pub mod pipeline;
pub mod presets;
pub mod ring;
pub mod scalar;
pub mod text;

pub use chern::{c_from_ch, ch_from_c, ChernCharacter, TotalChernClass};
pub use error::{Error, ParseError, Position, Result};
pub use expr::{parse_expression, Expression};
pub use pipeline::{count_maximal_subbundles, CountResult, PresetSpec};
pub use ring::{load_presentation, GradedElement, Monomial, PresentationBuilder, RingPresentation};
pub use scalar::ParamScalar;
