use maxsub_core::formulas::{hirschowitz_smax, m2_closed, quot_dim, s_invariant, stratum_dim};
use num_integer::Integer;
use proptest::prelude::*;

#[test]
fn smax_bounds_sweep() {
    for n in 2..=8i64 {
        for k in 1..n {
            for g in 2..=5i64 {
                for d in 0..n {
                    let s = hirschowitz_smax(n, k, d, g).unwrap();
                    let base = k * (n - k) * (g - 1);
                    assert!(base <= s && s < base + n, "n={n} k={k} g={g} d={d}");
                    assert_eq!((s - k * d).mod_floor(&n), 0);
                    assert!(s <= k * (n - k) * g);
                }
            }
        }
    }
}

#[test]
fn general_rank_two_stratum_is_the_moduli_space() {
    for d in [-5, -1, 1, 3, 7] {
        assert_eq!(stratum_dim(2, 1, d, 2, 1).unwrap(), 5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smax_depends_on_degree_mod_n(n in 2i64..=12, k in 1i64..12, g in 2i64..=8, d in -50i64..50) {
        prop_assume!(k < n);
        prop_assert_eq!(hirschowitz_smax(n, k, d, g).unwrap(), hirschowitz_smax(n, k, d + n, g).unwrap());
    }

    #[test]
    fn s_changes_by_n_per_unit_of_subdegree(n in 2i64..=12, k in 1i64..12, d in -50i64..50, e in -20i64..20) {
        prop_assume!(k < n);
        prop_assert_eq!(s_invariant(n, d, k, e).unwrap() - s_invariant(n, d, k, e + 1).unwrap(), n);
    }

    #[test]
    fn quot_of_full_rank_and_degree_is_a_point(r in 1i64..=8, d in -20i64..20, g in 2i64..=6) {
        prop_assert_eq!(quot_dim(r, d, r, d, g).unwrap(), 0);
    }

    #[test]
    fn m2_integral_on_even_ranks(half in 1i64..=100) {
        prop_assert!(m2_closed(2 * half).value.is_integer());
    }
}
