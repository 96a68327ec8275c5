use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Signed;

use super::monomial::Monomial;
use super::presentation::{add_into, RawPolynomial, RingPresentation};
use crate::error::{Error, Result};
use crate::expr::{Algebra, Expression};
use crate::scalar::{fmt_coeff_factor, fmt_rational, ParamScalar};

/// An element of a presented ring, always held in normal form.
#[derive(Clone)]
pub struct GradedElement {
    ring: Arc<RingPresentation>,
    terms: RawPolynomial,
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({self})")
    }
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedElement {}

impl GradedElement {
    pub fn zero(ring: &Arc<RingPresentation>) -> Self {
        GradedElement {
            ring: ring.clone(),
            terms: RawPolynomial::new(),
        }
    }

    pub fn one(ring: &Arc<RingPresentation>) -> Self {
        Self::scalar(ring, ParamScalar::one())
    }

    pub fn scalar(ring: &Arc<RingPresentation>, s: ParamScalar) -> Self {
        Self::from_raw(ring, [(ring.one_monomial(), s)])
    }

    pub fn generator(ring: &Arc<RingPresentation>, name: &str) -> Result<Self> {
        let i = ring.generator_index(name)?;
        Ok(Self::from_raw(
            ring,
            [(
                Monomial::generator(ring.num_generators(), i),
                ParamScalar::one(),
            )],
        ))
    }

    pub fn monomial(ring: &Arc<RingPresentation>, m: Monomial) -> Self {
        Self::from_raw(ring, [(m, ParamScalar::one())])
    }

    /// Normal form of a formal sum of monomial terms.
    pub fn from_raw<I>(ring: &Arc<RingPresentation>, raw: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ParamScalar)>,
    {
        GradedElement {
            ring: ring.clone(),
            terms: ring.normal_form_raw(raw),
        }
    }

    /// Parses and evaluates `text` in `ring`.
    pub fn parse(ring: &Arc<RingPresentation>, text: &str) -> Result<Self> {
        let expr = Expression::parse(text)?;
        Self::evaluate(ring, &expr)
    }

    pub fn evaluate(ring: &Arc<RingPresentation>, expr: &Expression) -> Result<Self> {
        expr.evaluate(&RingAlgebra { ring })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn terms(&self) -> &RawPolynomial {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ParamScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> ParamScalar {
        self.coefficient(&self.ring.one_monomial())
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c);
        }
        Ok(GradedElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut terms = RawPolynomial::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                for (u, d) in self.ring.lookup(&ma.mul(mb)) {
                    add_into(&mut terms, u.clone(), &(&c * d));
                }
            }
        }
        Ok(GradedElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, s: &ParamScalar) -> Self {
        let mut terms = RawPolynomial::new();
        for (m, c) in &self.terms {
            add_into(&mut terms, m.clone(), &(c * s));
        }
        GradedElement {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&ParamScalar::from(q.clone()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The part of cohomological degree exactly `degree`.
    pub fn component(&self, degree: u32) -> Self {
        GradedElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| self.ring.degree(m) == degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.degree(m)).max()
    }

    /// Evaluation against the fundamental class of the base.
    pub fn integrate(&self) -> Result<ParamScalar> {
        let ring = &self.ring;
        if ring.integrals().is_empty() {
            return Err(Error::NoIntegrals);
        }
        let top = ring.top_degree();
        let mut total = ParamScalar::zero();
        for (m, c) in &self.terms {
            let d = ring.degree(m);
            if d < top {
                continue;
            }
            if !ring.is_base(m) {
                return Err(Error::IntegrateAfterPushforward(ring.format_monomial(m)));
            }
            let v = ring
                .integral_value(m)
                .ok_or_else(|| Error::IncompletePresentation(ring.format_monomial(m)))?;
            total += &c.scale(v);
        }
        Ok(total)
    }

    /// Integration along the curve: keeps the terms linear in the fiber class
    /// and strips it, lowering degrees by two.
    pub fn pushforward_fiber(&self) -> Result<Self> {
        let f = self.ring.fiber().ok_or(Error::NoFiberClass)?;
        let raw: Vec<(Monomial, ParamScalar)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(f) == 1)
            .map(|(m, c)| (m.without(f), c.clone()))
            .collect();
        Ok(Self::from_raw(&self.ring, raw))
    }

    /// Restriction to `{x} × base`: the fiber class and fiber-supported
    /// generators map to zero, everything else is fixed.
    pub fn restrict_to_point(&self) -> Self {
        let raw: Vec<(Monomial, ParamScalar)> = self
            .terms
            .iter()
            .filter(|(m, _)| self.ring.is_base(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::from_raw(&self.ring, raw)
    }

    /// Terms in canonical print order: descending degree, then graded-lex.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &ParamScalar)> {
        let w = self.ring.weights();
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0, w));
        v
    }
}

struct RingAlgebra<'a> {
    ring: &'a Arc<RingPresentation>,
}

impl Algebra for RingAlgebra<'_> {
    type Value = GradedElement;

    fn constant(&self, q: BigRational) -> GradedElement {
        GradedElement::scalar(self.ring, q.into())
    }

    fn ident(&self, name: &str) -> Result<GradedElement> {
        if self.ring.generator_names().iter().any(|n| n == name) {
            GradedElement::generator(self.ring, name)
        } else if self.ring.params().iter().any(|n| n == name) {
            Ok(GradedElement::scalar(self.ring, ParamScalar::param(name)))
        } else {
            Err(Error::UnknownIdentifier(name.to_string()))
        }
    }

    fn add(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        a.try_add(b)
    }

    fn neg(&self, a: &GradedElement) -> GradedElement {
        -a
    }

    fn mul(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        a.try_mul(b)
    }

    fn as_constant(&self, a: &GradedElement) -> Option<BigRational> {
        if a.terms.keys().all(|m| m.is_one()) {
            a.constant_term().as_constant()
        } else {
            None
        }
    }
}

/// Canonical form, e.g. `-(1/12)*n*alpha^3*theta + ((1/6) - ...)*alpha^3`.
/// The output parses back to the same element.
impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let single = terms.len() == 1;
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mono = (!m.is_one()).then(|| self.ring.format_monomial(m));
            if c.num_terms() == 1 {
                let (pm, q) = c.terms().next().unwrap();
                let sep = match (i, q.is_negative()) {
                    (0, true) => "-",
                    (0, false) => "",
                    (_, true) => " - ",
                    (_, false) => " + ",
                };
                write!(f, "{sep}")?;
                let mut factors: Vec<String> = Vec::new();
                if pm.is_one() && mono.is_none() {
                    factors.push(fmt_rational(&q.abs()));
                } else if let Some(s) = fmt_coeff_factor(q) {
                    factors.push(s);
                }
                if !pm.is_one() {
                    factors.push(pm.to_string());
                }
                factors.extend(mono);
                write!(f, "{}", factors.join("*"))?;
            } else {
                if i > 0 {
                    write!(f, " + ")?;
                }
                match mono {
                    Some(s) => write!(f, "({c})*{s}")?,
                    None if single => write!(f, "{c}")?,
                    None => write!(f, "({c})")?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &GradedElement {
    type Output = GradedElement;
    /// Panics if the operands belong to different presentations; see `try_add`.
    fn add(self, rhs: &GradedElement) -> GradedElement {
        self.try_add(rhs).expect("mismatched presentations")
    }
}

impl Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        self.try_sub(rhs).expect("mismatched presentations")
    }
}

impl Mul for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        self.try_mul(rhs).expect("mismatched presentations")
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        GradedElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        -&self
    }
}
