//! Presented graded-commutative rings: monomials, presentations with their
//! normal-form tables, and elements.

mod element;
mod monomial;
mod presentation;

use std::sync::Arc;

pub use element::GradedElement;
pub use monomial::{enumerate, Monomial};
pub use presentation::{
    Generator, PresentationBuilder, RawPolynomial, Reducer, RingPresentation, Rule,
};

use crate::error::Result;
use crate::text::Document;

/// Parses and validates a presentation file. Preset header sections, if
/// present, are ignored here.
pub fn load_presentation(text: &str) -> Result<Arc<RingPresentation>> {
    let doc = Document::parse(text)?;
    PresentationBuilder::from_document(&doc)?.build()
}
