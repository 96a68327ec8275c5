use std::sync::{Arc, OnceLock};

use maxsub_core::chern::{c_from_ch, ch_from_c, ChernCharacter, TotalChernClass};
use maxsub_core::ring::{enumerate, GradedElement, Monomial, RingPresentation};
use maxsub_core::{presets, ParamScalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g2() -> &'static Arc<RingPresentation> {
    static RING: OnceLock<Arc<RingPresentation>> = OnceLock::new();
    RING.get_or_init(|| presets::g2_rank2().unwrap().ring().clone())
}

fn monomials(max_degree: u32) -> &'static [Monomial] {
    static LOW: OnceLock<Vec<Monomial>> = OnceLock::new();
    static ALL: OnceLock<Vec<Monomial>> = OnceLock::new();
    let cell = if max_degree <= 10 { &LOW } else { &ALL };
    cell.get_or_init(|| enumerate(g2().weights(), max_degree))
}

type RawTerms = Vec<(usize, i64, i64, u32)>;

/// Terms as (monomial index, numerator, denominator, power of n).
fn raw_terms(max_len: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec((any::<usize>(), -4i64..=4, 1i64..=3, 0u32..=2), 0..=max_len)
}

fn scalar(num: i64, den: i64, power: u32) -> ParamScalar {
    &ParamScalar::ratio(num, den) * &ParamScalar::param("n").pow(power)
}

fn element_from(terms: &RawTerms, max_degree: u32) -> GradedElement {
    let ms = monomials(max_degree);
    GradedElement::from_raw(
        g2(),
        terms
            .iter()
            .map(|&(i, a, b, p)| (ms[i % ms.len()].clone(), scalar(a, b, p))),
    )
}

fn element() -> impl Strategy<Value = GradedElement> {
    raw_terms(5).prop_map(|t| element_from(&t, 10))
}

/// Elements with zero constant term.
fn positive_element() -> impl Strategy<Value = GradedElement> {
    element().prop_map(|x| &x - &GradedElement::scalar(g2(), x.constant_term()))
}

fn character() -> impl Strategy<Value = ChernCharacter> {
    element().prop_map(|x| ChernCharacter::from_element(&x))
}

fn total_class() -> impl Strategy<Value = TotalChernClass> {
    positive_element()
        .prop_map(|x| TotalChernClass::from_element(&(&GradedElement::one(g2()) + &x)).unwrap())
}

fn degree_two() -> impl Strategy<Value = GradedElement> {
    element().prop_map(|x| x.component(2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn addition_is_a_commutative_group(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &GradedElement::zero(g2()), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &GradedElement::one(g2()), a.clone());
    }

    #[test]
    fn normal_form_is_idempotent(a in element()) {
        let again = GradedElement::from_raw(g2(), a.terms().clone());
        prop_assert_eq!(again, a);
    }

    #[test]
    fn reduction_order_does_not_matter(terms in raw_terms(4), seed in any::<u64>()) {
        let ms = monomials(12);
        let raw: Vec<(Monomial, ParamScalar)> = terms
            .iter()
            .map(|&(i, a, b, p)| (ms[i % ms.len()].clone(), scalar(a, b, p)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let stepwise = g2().reduce_with(raw.clone(), |k| rng.gen_range(0..k));
        let table = GradedElement::from_raw(g2(), raw);
        prop_assert_eq!(&stepwise, table.terms());
    }

    #[test]
    fn canonical_print_round_trips(a in element()) {
        let back = GradedElement::parse(g2(), &a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn chern_class_round_trip(c in total_class(), r in -3i64..=6) {
        let ch = ch_from_c(&c, &ParamScalar::from_int(r));
        prop_assert_eq!(c_from_ch(&ch), c);
    }

    #[test]
    fn chern_character_round_trip(ch in character()) {
        let back = ch_from_c(&c_from_ch(&ch), ch.rank());
        prop_assert_eq!(back, ch);
    }

    #[test]
    fn total_chern_class_is_multiplicative(a in character(), b in character()) {
        let lhs = c_from_ch(&a.add(&b).unwrap());
        let rhs = c_from_ch(&a).mul(&c_from_ch(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_formula(x in element(), y in element()) {
        let y = y.restrict_to_point();
        let lhs = (&x * &y).pushforward_fiber().unwrap();
        let rhs = &x.pushforward_fiber().unwrap() * &y;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_is_an_involution(ch in character()) {
        prop_assert_eq!(ch.dual().dual(), ch);
    }

    #[test]
    fn tensor_with_dual(a in character(), b in character()) {
        let t = a.tensor(&a.dual()).unwrap();
        prop_assert_eq!(t.rank(), &(a.rank() * a.rank()));
        prop_assert_eq!(t.dual(), t);
        prop_assert_eq!(a.tensor(&b).unwrap().dual(), a.dual().tensor(&b.dual()).unwrap());
    }

    #[test]
    fn line_bundles_multiply(a in degree_two(), b in degree_two()) {
        let one = GradedElement::one(g2());
        let line = |x: &GradedElement| {
            ch_from_c(&TotalChernClass::from_element(&(&one + x)).unwrap(), &ParamScalar::one())
        };
        prop_assert_eq!(line(&a).tensor(&line(&b)).unwrap(), line(&(&a + &b)));
    }

    #[test]
    fn integration_is_linear(x in element(), y in element(), a in -5i64..=5, b in -5i64..=5) {
        let x = x.restrict_to_point();
        let y = y.restrict_to_point();
        let sa = ParamScalar::from_int(a);
        let sb = ParamScalar::from_int(b);
        let combo = &x.scale(&sa) + &y.scale(&sb);
        let lhs = combo.integrate().unwrap();
        let rhs = &(&sa * &x.integrate().unwrap()) + &(&sb * &y.integrate().unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
