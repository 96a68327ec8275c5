//! Built-in presets.
//!
//! `g2-rank2` counts rank-2 maximal subbundles over a genus-2 curve.
//! `jacobian` counts line subbundles over a curve of any genus `g`; there the
//! moduli space of subbundles is the Jacobian itself and the answer is `n^g`.

use crate::error::{Error, Result};
use crate::pipeline::PresetSpec;

pub const G2_RANK2: &str = include_str!("../presets/g2-rank2.ring");

pub const NAMES: &[&str] = &["g2-rank2", "jacobian"];

pub fn g2_rank2() -> Result<PresetSpec> {
    PresetSpec::from_text(G2_RANK2)
}

/// Presentation of `H*(C × J)` for a genus-`g` curve, together with the
/// line-subbundle data `c(𝒰) = 1 + f`, `c(ℒ) = 1 + ξ₁`.
///
/// `theta^g = g!` is the classical top self-intersection of the theta divisor
/// on a principally polarised abelian variety. It enters as an input and is
/// not derived from the other relations.
pub fn jacobian_text(g: u32) -> String {
    let factorial: u128 = (1..=g as u128).product();
    format!(
        "# Rational cohomology of C x J for a genus-{g} curve C.\n\
         #\n\
         #   f      point class of C                H^2(C)\n\
         #   xi1    c1 of the Poincare bundle       H^1(C) x H^1(J)\n\
         #   theta  theta divisor of J              H^2(J)\n\
         #\n\
         # theta^{g} = {g}! is the top self-intersection of the theta divisor.\n\
         \n\
         preset: jacobian\n\
         params: n\n\
         generators: f=2, xi1=2, theta=2\n\
         rules:\n\
         \x20 xi1^2 -> -2*theta*f\n\
         zeros: f^2, xi1*f, theta^{next}\n\
         fiber: f\n\
         fiber_supported: xi1\n\
         integrals:\n\
         \x20 theta^{g} = {factorial}\n\
         top_degree: {top}\n\
         \n\
         subbundle_rank: 1\n\
         genus: {g}\n\
         subbundle_degree: 1\n\
         rank_parameter: n\n\
         universal_chern: 1 + f\n\
         poincare_chern: 1 + xi1\n",
        next = g + 1,
        top = 2 * g,
    )
}

pub fn jacobian(g: u32) -> Result<PresetSpec> {
    if g == 0 || g > 30 {
        return Err(Error::InvalidPreset(format!(
            "jacobian preset needs 1 <= genus <= 30, got {g}"
        )));
    }
    PresetSpec::from_text(&jacobian_text(g))
}

/// Looks up a built-in preset. `genus` is required for `jacobian` and
/// rejected for `g2-rank2`.
pub fn by_name(name: &str, genus: Option<u32>) -> Result<PresetSpec> {
    match (name, genus) {
        ("g2-rank2", None | Some(2)) => g2_rank2(),
        ("g2-rank2", Some(g)) => Err(Error::InvalidPreset(format!(
            "g2-rank2 is fixed at genus 2, got {g}"
        ))),
        ("jacobian", Some(g)) => jacobian(g),
        ("jacobian", None) => Err(Error::InvalidPreset("jacobian needs a genus".into())),
        _ => Err(Error::InvalidPreset(format!(
            "unknown preset `{name}`; available: {}",
            NAMES.join(", ")
        ))),
    }
}
