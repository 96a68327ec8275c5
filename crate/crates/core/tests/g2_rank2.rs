//! Exact intermediates of the rank-2, genus-2 count.

use maxsub_core::chern::{c_from_ch, ch_from_c, ChernCharacter};
use maxsub_core::pipeline::{
    count_maximal_subbundles, sheaf_e_character, sheaf_f_character, upstairs_character,
};
use maxsub_core::presets;
use maxsub_core::{GradedElement, ParamScalar};

fn ch(p: &maxsub_core::PresetSpec, text: &str) -> ChernCharacter {
    ChernCharacter::parse(p.ring(), text).unwrap()
}

#[test]
fn poincare_bundle_character() {
    let p = presets::g2_rank2().unwrap();
    let got = ch_from_c(p.poincare_chern(), &ParamScalar::one());
    assert_eq!(got, ch(&p, "1 + xi1 - theta*f"));
}

#[test]
fn universal_bundle_character() {
    let p = presets::g2_rank2().unwrap();
    let got = ch_from_c(p.universal_chern(), &ParamScalar::from_int(2));
    assert_eq!(
        got,
        ch(
            &p,
            "2 + (alpha + f) - xi2 + (-1/12*alpha^3 - 1/4*alpha^2*f)"
        )
    );
}

#[test]
fn upstairs_expansion() {
    let p = presets::g2_rank2().unwrap();
    let expected = ch(
        &p,
        "2*n + ((4*n - 4)*f - n*alpha - 2*n*xi1) \
         + ((-(5/2*n - 2)*alpha - 2*n*theta)*f + n*alpha*xi1 - n*xi2) \
         + ((n/4*alpha^2 + n*Lambda + n*alpha*theta)*f + n/12*alpha^3) \
         + ((5/24*n - 1/6)*alpha^3*f - n/12*alpha^3*xi1) \
         + (-n/12*alpha^3*theta*f)",
    );
    assert_eq!(upstairs_character(&p).unwrap(), expected);
}

#[test]
fn twisted_bundle_times_todd() {
    let p = presets::g2_rank2().unwrap();
    let ring = p.ring();
    let d = p.induced_degree();
    let n = ParamScalar::param("n");
    let ekd = &d + &(&n + &n);
    let e = &GradedElement::scalar(ring, n.clone())
        + &GradedElement::parse(ring, &format!("({ekd})*f")).unwrap();
    let td = GradedElement::parse(ring, "1 - f").unwrap();
    assert_eq!(
        &e * &td,
        GradedElement::parse(ring, "n + (5/2*n - 2)*f").unwrap()
    );
}

#[test]
fn pushed_forward_character() {
    let p = presets::g2_rank2().unwrap();
    let expected = ch(
        &p,
        "4*n - 4 + (-(5/2*n - 2)*alpha - 2*n*theta) \
         + (n/4*alpha^2 + n*Lambda + n*alpha*theta) \
         + (5/24*n - 1/6)*alpha^3 - n/12*alpha^3*theta",
    );
    assert_eq!(sheaf_e_character(&p).unwrap(), expected);
}

#[test]
fn pointwise_character() {
    let p = presets::g2_rank2().unwrap();
    assert_eq!(
        sheaf_f_character(&p).unwrap(),
        ch(&p, "4*n - 2*n*alpha + n/6*alpha^3")
    );
}

#[test]
fn difference_character() {
    let p = presets::g2_rank2().unwrap();
    let r = count_maximal_subbundles(&p).unwrap();
    let expected = ch(
        &p,
        "4 + ((1/2*n - 2)*alpha + 2*n*theta) \
         + (-n/4*alpha^2 - n*Lambda - n*alpha*theta) \
         + (1/6 - 1/24*n)*alpha^3 + n/12*alpha^3*theta",
    );
    assert_eq!(r.ch_difference, expected);
}

#[test]
fn top_chern_class_and_count() {
    let p = presets::g2_rank2().unwrap();
    let r = count_maximal_subbundles(&p).unwrap();
    let c5 = GradedElement::parse(
        p.ring(),
        "(n^5/24 - 5*n^3/12)*alpha^3*theta^2 + n^3*theta*Lambda^2",
    )
    .unwrap();
    assert_eq!(r.c_top, c5);
    assert_eq!(r.integral.to_string(), "(1/3)*n^5 + (2/3)*n^3");
    assert_eq!(r.count.to_string(), "(1/48)*n^5 + (1/24)*n^3");
    assert_eq!(r.headline(), "m_2 = (1/48)*n^5 + (1/24)*n^3");
}

#[test]
fn intersection_numbers() {
    let p = presets::g2_rank2().unwrap();
    let int = |t: &str| {
        GradedElement::parse(p.ring(), t)
            .unwrap()
            .integrate()
            .unwrap()
    };
    assert_eq!(int("alpha^3*theta^2"), ParamScalar::from_int(8));
    assert_eq!(int("theta*Lambda^2"), ParamScalar::from_int(4));
    // theta^2 [J] = 2 combined with alpha^3 [M0] = 4
    assert_eq!(
        int("alpha^3*theta^2 + theta*Lambda^2"),
        ParamScalar::from_int(12)
    );
}

#[test]
fn theta_squared_from_poincare_relation() {
    // xi1^2 = -2 theta f, so xi1^4 = 4 theta^2 f^2 = 0 and theta*xi1^2 pushes to -2 theta^2
    let p = presets::g2_rank2().unwrap();
    let x = GradedElement::parse(p.ring(), "theta*xi1^2").unwrap();
    let pushed = x.pushforward_fiber().unwrap();
    assert_eq!(
        pushed,
        GradedElement::parse(p.ring(), "-2*theta^2").unwrap()
    );
}

#[test]
fn rank_identity() {
    let p = presets::g2_rank2().unwrap();
    let r = count_maximal_subbundles(&p).unwrap();
    let expected = r.ch_f.rank() - &ParamScalar::from_int(4);
    assert_eq!(r.ch_e.rank(), &expected);
    // rk E = n'd - nd' + nn'(g - 1)
    let two = ParamScalar::from_int(2);
    let n = ParamScalar::param("n");
    let direct = &(&(&two * &p.induced_degree()) - &n) + &(&two * &n);
    assert_eq!(r.ch_e.rank(), &direct);
}

#[test]
fn porteous_consistency() {
    let p = presets::g2_rank2().unwrap();
    let r = count_maximal_subbundles(&p).unwrap();
    let lhs = c_from_ch(&r.ch_e)
        .mul(&c_from_ch(&r.ch_difference))
        .unwrap();
    assert_eq!(lhs, c_from_ch(&r.ch_f));
}

#[test]
fn closed_form_matches_specialisation() {
    let p = presets::g2_rank2().unwrap();
    let r = count_maximal_subbundles(&p).unwrap();
    for n in (4..=40).step_by(2) {
        let closed = maxsub_core::formulas::m2_closed(n);
        assert!(closed.admissible);
        assert_eq!(r.specialize(n).unwrap(), closed.value, "n={n}");
        assert!(p.is_admissible(n));
    }
}

#[test]
fn consistency_suite_passes() {
    let p = presets::g2_rank2().unwrap();
    for c in maxsub_core::pipeline::consistency_checks(&p).unwrap() {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}
