mod common;

use std::cmp::Ordering;

use lienard_cycles::families::assemble;
use lienard_cycles::lienard::{
    bounds, certify, cofactor, derive_system, invariance_check, HyperellipticCurve, LienardSystem,
};
use lienard_cycles::polyx::{ratio, Poly, Rational};
use lienard_cycles::recover::{recover_curve, RecoverError, RecoveryOutcome};
use lienard_cycles::rootclass::isolate_real_roots;
use proptest::prelude::*;

use common::residual_vanishes;

/// `lead * prod (x - r_i)^e_i` over distinct integer roots.
fn rooted_poly() -> impl Strategy<Value = Poly> {
    (
        proptest::collection::btree_map(-6i64..=6, 1usize..=3, 1..=4),
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
    )
        .prop_map(|(roots, lead)| {
            roots
                .into_iter()
                .fold(Poly::from_ints(&[lead]), |acc, (r, e)| {
                    &acc * &Poly::from_ints(&[-r, 1]).pow(e)
                })
        })
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

/// Curves from the generic assembly, which always satisfy the
/// divisibility conditions of `derive_system`.
fn assembled_curve() -> impl Strategy<Value = HyperellipticCurve> {
    (rooted_poly(), nonzero_rational()).prop_map(|(q1, c)| {
        let p1 = &q1 + &Poly::constant(c);
        assemble(&q1, &p1)
    })
}

fn accepted() -> impl Strategy<Value = (HyperellipticCurve, LienardSystem)> {
    assembled_curve().prop_filter_map("derive_system rejects", |c| {
        let sys = derive_system(&c).ok()?;
        (sys.m() >= 1 && !sys.g.is_zero()).then_some((c, sys))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cofactor_identity(pair in accepted()) {
        let (curve, sys) = pair;
        prop_assert!(residual_vanishes(&sys, &curve));
        prop_assert!(invariance_check(&sys, &curve));
        let k = cofactor(&curve).unwrap().k;
        prop_assert_eq!(&k * &curve.q, -(&curve.p * &curve.q.derivative()));
    }

    #[test]
    fn degree_contract(pair in accepted()) {
        let (curve, sys) = pair;
        let (m, n) = sys.degrees();
        prop_assert_eq!(curve.p.degree(), Some(m + 1));
        let d = &(&curve.p * &curve.p) - &curve.q;
        prop_assert_eq!(d.degree(), Some(n + 1));
    }

    #[test]
    fn roots_of_q_are_roots_of_p(pair in accepted()) {
        let (curve, _) = pair;
        prop_assert!(curve.q.squarefree_part().divides(&curve.p));
    }

    #[test]
    fn certification_is_consistent(pair in accepted()) {
        let (curve, sys) = pair;
        let report = certify(&curve).unwrap();
        let b = bounds(sys.m(), sys.n());
        prop_assert!(b.admits(report.certified_count), "{} cycles beyond {:?}", report.certified_count, b);
        prop_assert_eq!(report.within_bounds, b.admits(report.certified_count));
        let certified: Vec<_> = report.conditions.iter().filter(|v| v.certified).collect();
        prop_assert_eq!(certified.len(), report.certified_count);
        for v in certified {
            prop_assert_eq!(v.s1.multiplicity, 1);
            prop_assert_eq!(v.s2.multiplicity, 1);
            prop_assert!(v.q_positive && v.p2_minus_q_negative && v.f_nonzero_at_critical);
            // g'(alpha) > 0 at each critical point of Q strictly inside the strip
            let gp = sys.g.derivative();
            let (mut s1, mut s2) = (v.s1.clone(), v.s2.clone());
            for mut alpha in isolate_real_roots(&curve.q.derivative()) {
                if alpha.compare(&mut s1) == Ordering::Greater && alpha.compare(&mut s2) == Ordering::Less {
                    prop_assert_eq!(alpha.sign_of(&gp), 1);
                }
            }
        }
    }

    #[test]
    fn recovery_round_trip(pair in accepted()) {
        let (curve, sys) = pair;
        let (m, n) = sys.degrees();
        match recover_curve(&sys) {
            Err(RecoverError::UndeterminedType { .. }) => prop_assert_eq!(n, 2 * m + 1),
            Ok(RecoveryOutcome::Curve { curve: got, .. }) => {
                prop_assert_ne!(n, 2 * m + 1);
                prop_assert_eq!(got, curve);
            }
            other => prop_assert!(false, "({}, {}): {:?}", m, n, other),
        }
    }
}

// Systems with an invariant curve perturbed by a constant in `g`: any
// curve still reported must pass the invariance check.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recovered_curves_are_invariant(pair in accepted(), bump in nonzero_rational()) {
        let (_, sys) = pair;
        let (m, n) = sys.degrees();
        prop_assume!(n != 2 * m + 1);
        let perturbed = LienardSystem::new(sys.f.clone(), &sys.g + &Poly::constant(bump));
        if let Ok(RecoveryOutcome::Curve { curve, exact_match, .. }) = recover_curve(&perturbed) {
            prop_assert!(exact_match);
            prop_assert!(residual_vanishes(&perturbed, &curve));
        }
    }
}

#[test]
fn negative_examples_have_no_positive_certificates() {
    // Q with a complex pair: no strip may be certified
    let curve = HyperellipticCurve::new(
        Poly::from_ints(&[0, 1, 0, 1]),
        Poly::from_ints(&[0, 1, 0, 1]).scale(&ratio(-1, 1)),
    );
    if let Ok(report) = certify(&curve) {
        assert!(!report.q_roots_all_real);
        assert_eq!(report.certified_count, 0);
    }
}
