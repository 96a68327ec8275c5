//! Chern characters and total Chern classes over a presented ring.
//!
//! Both are stored by component: `ch_k` and `c_k` are homogeneous of degree
//! `2k`, for `k` up to half the ambient degree of the ring. Conversions go
//! through power sums `p_k = k! ch_k` and Newton's identities.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{GradedElement, RingPresentation};
use crate::scalar::ParamScalar;

fn factorial(k: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Chern character `rank + ch_1 + ch_2 + ...` of a (virtual) bundle.
#[derive(Debug, Clone)]
pub struct ChernCharacter {
    ring: Arc<RingPresentation>,
    rank: ParamScalar,
    /// `components[k - 1]` is `ch_k`.
    components: Vec<GradedElement>,
}

/// Total Chern class `1 + c_1 + c_2 + ...`.
#[derive(Debug, Clone)]
pub struct TotalChernClass {
    ring: Arc<RingPresentation>,
    /// `components[k]` is `c_k`; `components[0]` is 1.
    components: Vec<GradedElement>,
}

impl PartialEq for ChernCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
            && self.rank == other.rank
            && self.components == other.components
    }
}

impl Eq for ChernCharacter {}

impl PartialEq for TotalChernClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.components == other.components
    }
}

impl Eq for TotalChernClass {}

fn split(x: &GradedElement) -> Vec<GradedElement> {
    let max = x.ring().max_component();
    (0..=max).map(|k| x.component(2 * k as u32)).collect()
}

impl ChernCharacter {
    pub fn constant(ring: &Arc<RingPresentation>, rank: ParamScalar) -> Self {
        ChernCharacter {
            ring: ring.clone(),
            rank,
            components: vec![GradedElement::zero(ring); ring.max_component()],
        }
    }

    /// Splits an element into rank and homogeneous components.
    pub fn from_element(x: &GradedElement) -> Self {
        let mut parts = split(x);
        let rank = parts.remove(0).constant_term();
        ChernCharacter {
            ring: x.ring().clone(),
            rank,
            components: parts,
        }
    }

    pub fn parse(ring: &Arc<RingPresentation>, text: &str) -> Result<Self> {
        Ok(Self::from_element(&GradedElement::parse(ring, text)?))
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn rank(&self) -> &ParamScalar {
        &self.rank
    }

    /// `ch_k`; `ch_0` is the rank as a ring element.
    pub fn component(&self, k: usize) -> GradedElement {
        match k {
            0 => GradedElement::scalar(&self.ring, self.rank.clone()),
            k if k <= self.components.len() => self.components[k - 1].clone(),
            _ => GradedElement::zero(&self.ring),
        }
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn to_element(&self) -> GradedElement {
        self.components.iter().fold(
            GradedElement::scalar(&self.ring, self.rank.clone()),
            |acc, c| &acc + c,
        )
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(ChernCharacter {
            ring: self.ring.clone(),
            rank: &self.rank + &other.rank,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Character of the virtual bundle `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        self.add(&other.scale(&ParamScalar::from_int(-1)))
    }

    /// Character of `self ⊗ ℂ^s` for a scalar multiplicity `s`.
    pub fn scale(&self, s: &ParamScalar) -> Self {
        ChernCharacter {
            ring: self.ring.clone(),
            rank: &self.rank * s,
            components: self.components.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// `ch_k ↦ (-1)^k ch_k`.
    pub fn dual(&self) -> Self {
        ChernCharacter {
            ring: self.ring.clone(),
            rank: self.rank.clone(),
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let max = self.components.len();
        let components = (1..=max)
            .map(|k| {
                let mut acc =
                    &self.component(k).scale(&other.rank) + &other.component(k).scale(&self.rank);
                for i in 1..k {
                    acc = &acc + &(&self.components[i - 1] * &other.components[k - i - 1]);
                }
                acc
            })
            .collect();
        Ok(ChernCharacter {
            ring: self.ring.clone(),
            rank: &self.rank * &other.rank,
            components,
        })
    }

    /// Applies the fiber pushforward to each component; the result has rank
    /// given by the pushforward of `ch_1`.
    pub fn pushforward_fiber(&self) -> Result<Self> {
        let pushed: Vec<GradedElement> = self
            .components
            .iter()
            .map(|c| c.pushforward_fiber())
            .collect::<Result<_>>()?;
        let rank = pushed
            .first()
            .map(|c| c.constant_term())
            .unwrap_or_default();
        let mut components: Vec<GradedElement> = pushed.into_iter().skip(1).collect();
        components.push(GradedElement::zero(&self.ring));
        Ok(ChernCharacter {
            ring: self.ring.clone(),
            rank,
            components,
        })
    }

    pub fn restrict_to_point(&self) -> Self {
        ChernCharacter {
            ring: self.ring.clone(),
            rank: self.rank.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.restrict_to_point())
                .collect(),
        }
    }

    /// Power sums `p_k = k! ch_k` for `k = 1..`.
    fn power_sums(&self) -> Vec<GradedElement> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale_rational(&factorial(i + 1)))
            .collect()
    }
}

/// Chern character of a bundle of rank `rank` with total Chern class `c`:
/// `p_k = Σ_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k`, `ch_k = p_k / k!`.
pub fn ch_from_c(c: &TotalChernClass, rank: &ParamScalar) -> ChernCharacter {
    let ring = &c.ring;
    let max = ring.max_component();
    let mut p: Vec<GradedElement> = Vec::with_capacity(max + 1);
    p.push(GradedElement::scalar(ring, rank.clone()));
    for k in 1..=max {
        let mut acc = c.components[k].scale_rational(&(sign(k - 1) * int(k)));
        for i in 1..k {
            acc = &acc + &(&c.components[i] * &p[k - i]).scale_rational(&sign(i - 1));
        }
        p.push(acc);
    }
    ChernCharacter {
        ring: ring.clone(),
        rank: rank.clone(),
        components: p
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(k, pk)| pk.scale_rational(&factorial(k).recip()))
            .collect(),
    }
}

/// Total Chern class of a (virtual) bundle from its character:
/// `k c_k = Σ_{i=1..k} (-1)^{i-1} p_i c_{k-i}`.
pub fn c_from_ch(ch: &ChernCharacter) -> TotalChernClass {
    let ring = &ch.ring;
    let p = ch.power_sums();
    let mut c: Vec<GradedElement> = vec![GradedElement::one(ring)];
    for k in 1..=p.len() {
        let mut acc = GradedElement::zero(ring);
        for i in 1..=k {
            acc = &acc + &(&p[i - 1] * &c[k - i]).scale_rational(&sign(i - 1));
        }
        c.push(acc.scale_rational(&int(k).recip()));
    }
    TotalChernClass {
        ring: ring.clone(),
        components: c,
    }
}

impl TotalChernClass {
    pub fn one(ring: &Arc<RingPresentation>) -> Self {
        let mut components = vec![GradedElement::zero(ring); ring.max_component() + 1];
        components[0] = GradedElement::one(ring);
        TotalChernClass {
            ring: ring.clone(),
            components,
        }
    }

    /// Splits `1 + c_1 + c_2 + ...` into components; the constant term must be 1.
    pub fn from_element(x: &GradedElement) -> Result<Self> {
        let components = split(x);
        if components[0] != GradedElement::one(x.ring()) {
            return Err(Error::BadChernClass(components[0].to_string()));
        }
        Ok(TotalChernClass {
            ring: x.ring().clone(),
            components,
        })
    }

    pub fn parse(ring: &Arc<RingPresentation>, text: &str) -> Result<Self> {
        Self::from_element(&GradedElement::parse(ring, text)?)
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn component(&self, k: usize) -> GradedElement {
        self.components
            .get(k)
            .cloned()
            .unwrap_or_else(|| GradedElement::zero(&self.ring))
    }

    pub fn num_components(&self) -> usize {
        self.components.len() - 1
    }

    pub fn to_element(&self) -> GradedElement {
        self.components
            .iter()
            .skip(1)
            .fold(self.components[0].clone(), |acc, c| &acc + c)
    }

    /// Product of total classes, i.e. the class of a direct sum.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(Error::PresentationMismatch);
        }
        let product = self.to_element().try_mul(&other.to_element())?;
        Self::from_element(&product)
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

impl fmt::Display for TotalChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_element())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn ring() -> Arc<RingPresentation> {
        presets::g2_rank2().unwrap().ring().clone()
    }

    fn el(r: &Arc<RingPresentation>, s: &str) -> GradedElement {
        GradedElement::parse(r, s).unwrap()
    }

    #[test]
    fn universal_bundle_character() {
        let r = ring();
        let c =
            TotalChernClass::parse(&r, "1 + (alpha + f) + (alpha^2/2 + xi2 + alpha*f)").unwrap();
        let ch = ch_from_c(&c, &ParamScalar::from_int(2));
        assert_eq!(
            ch.to_element(),
            el(
                &r,
                "2 + (alpha + f) + (-xi2) + (-1/12*alpha^3 - 1/4*alpha^2*f)"
            )
        );
    }

    #[test]
    fn poincare_bundle_character() {
        let r = ring();
        let c = TotalChernClass::parse(&r, "1 + xi1").unwrap();
        let ch = ch_from_c(&c, &ParamScalar::one());
        assert_eq!(ch.to_element(), el(&r, "1 + xi1 - theta*f"));
        assert_eq!(c_from_ch(&ch), c);
    }

    #[test]
    fn trivial_bundle() {
        let r = ring();
        let rank = ParamScalar::param("n");
        let ch = ch_from_c(&TotalChernClass::one(&r), &rank);
        assert_eq!(ch, ChernCharacter::constant(&r, rank));
        assert_eq!(c_from_ch(&ch), TotalChernClass::one(&r));
    }

    #[test]
    fn dual_flips_odd_components() {
        let r = ring();
        let ch = ChernCharacter::parse(&r, "1 + xi1 - theta*f").unwrap();
        // Oracle: exp(-xi1) reduced in the ring.
        let x = el(&r, "-xi1");
        let exp = &(&GradedElement::one(&r) + &x)
            + &x.pow(2)
                .scale_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(ch.dual().to_element(), exp);
        assert_eq!(ch.dual().to_element(), el(&r, "1 - xi1 - theta*f"));
        let k = ChernCharacter::constant(&r, ParamScalar::from_int(3));
        assert_eq!(k.dual(), k);
    }

    #[test]
    fn tensor_unit_and_rank() {
        let r = ring();
        let a = ChernCharacter::parse(&r, "2 + alpha + f - xi2").unwrap();
        let one = ChernCharacter::constant(&r, ParamScalar::one());
        assert_eq!(a.tensor(&one).unwrap(), a);
        let l = ChernCharacter::parse(&r, "1 + xi1 - theta*f").unwrap();
        let e = ChernCharacter::constant(&r, ParamScalar::param("n"));
        let t = a.tensor(&l).unwrap().tensor(&e).unwrap();
        assert_eq!(
            t.rank(),
            &ParamScalar::param("n").scale(&BigRational::from_integer(2.into()))
        );
    }

    #[test]
    fn difference_with_itself_is_zero() {
        let r = ring();
        let a = ChernCharacter::parse(&r, "2 + alpha + f - xi2 + n*theta*Lambda").unwrap();
        assert_eq!(
            a.sub(&a).unwrap(),
            ChernCharacter::constant(&r, ParamScalar::zero())
        );
    }

    #[test]
    fn c5_of_the_virtual_difference() {
        let r = ring();
        let ch = ChernCharacter::parse(
            &r,
            "4 + ((1/2*n - 2)*alpha + 2*n*theta) + (-n/4*alpha^2 - n*Lambda - n*alpha*theta) \
             + (1/6 - n/24)*alpha^3 + n/12*alpha^3*theta",
        )
        .unwrap();
        let c = c_from_ch(&ch);
        assert_eq!(
            c.component(5),
            el(
                &r,
                "(n^5/24 - 5*n^3/12)*alpha^3*theta^2 + n^3*theta*Lambda^2"
            )
        );
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = ChernCharacter::constant(&ring(), ParamScalar::one());
        let b = ChernCharacter::constant(&ring(), ParamScalar::one());
        assert_eq!(a.tensor(&b), Err(Error::PresentationMismatch));
        assert_eq!(a.sub(&b), Err(Error::PresentationMismatch));
    }

    #[test]
    fn chern_class_needs_unit_constant() {
        let r = ring();
        assert!(matches!(
            TotalChernClass::parse(&r, "2 + alpha"),
            Err(Error::BadChernClass(_))
        ));
    }
}
