use lienard_cycles::polyx::{parse_poly, ratio, Poly, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn poly_of_degree(lo: usize, hi: usize) -> impl Strategy<Value = Poly> {
    (lo..=hi)
        .prop_flat_map(|d| {
            (
                proptest::collection::vec(small_rational(), d),
                small_rational(),
            )
        })
        .prop_map(|(mut c, lead)| {
            c.push(if lead.is_zero() {
                Rational::one()
            } else {
                lead
            });
            Poly::new(c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_recovers_quotient_and_remainder(a in poly_of_degree(0, 8), b in poly_of_degree(1, 8), r in poly_of_degree(0, 7)) {
        prop_assume!(r.degree() < b.degree());
        let n = &(&a * &b) + &r;
        let (q, rem) = n.divrem(&b).unwrap();
        prop_assert_eq!(q, a);
        prop_assert_eq!(rem, r);
    }

    #[test]
    fn gcd_scales_with_common_factor(a in poly_of_degree(1, 5), b in poly_of_degree(1, 5), g in poly_of_degree(1, 3)) {
        prop_assume!(Poly::gcd(&a, &b).is_constant());
        let got = Poly::gcd(&(&a * &g), &(&b * &g));
        prop_assert_eq!(got.monic(), g.monic());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly_of_degree(0, 8), b in poly_of_degree(0, 8), xs in proptest::collection::vec(small_rational(), 100)) {
        let ab = &a * &b;
        let sum = &a + &b;
        for x in &xs {
            prop_assert_eq!(ab.eval(x), a.eval(x) * b.eval(x));
            prop_assert_eq!(sum.eval(x), a.eval(x) + b.eval(x));
        }
    }

    #[test]
    fn squarefree_part_is_squarefree(a in poly_of_degree(1, 4), b in poly_of_degree(1, 3)) {
        let p = &(&a * &a) * &(&b.pow(3) * &a);
        let sf = p.squarefree_part();
        prop_assert!(Poly::gcd(&sf, &sf.derivative()).is_constant());
        prop_assert!(sf.divides(&p));
        // every root of p is a root of sf: p divides sf^deg(p)
        prop_assert!(p.divides(&sf.pow(p.degree().unwrap())));
    }

    #[test]
    fn printing_round_trips(a in poly_of_degree(0, 8)) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
    }
}
