mod common;

use lienard_cycles::families::{
    self, construct_case_i_with, default_case_i_pattern, perturb_lemma7, perturb_lemma8, Family,
    FamilyError, RootPattern, SearchConfig,
};
use lienard_cycles::lienard::{bounds, certify, derive_system};
use lienard_cycles::polyx::{rat, Poly, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

use common::{
    count_between, distinct_real_roots, is_squarefree, positive_on, residual_vanishes, worked_curve,
};

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn formula(m: usize, n: usize) -> usize {
    if n >= 2 * m + 1 {
        m / 2
    } else if n <= families::knee(m) {
        n - m - 1
    } else {
        (n - 1) / 4
    }
}

fn int_roots_squared(l: usize) -> Poly {
    (1..=l as i64).fold(Poly::one(), |acc, i| {
        &acc * &Poly::from_ints(&[-i, 1]).pow(2)
    })
}

/// Per-gap root counts of `f` between consecutive `breaks`; gap `i` is
/// `(breaks[i], breaks[i+1]]`.
fn gap_counts(f: &Poly, breaks: &[Rational]) -> Vec<usize> {
    breaks
        .windows(2)
        .map(|w| count_between(f, &w[0], &w[1]))
        .collect()
}

#[test]
fn formula_counts_across_cells() {
    let cells = [
        (2, 5),
        (2, 6),
        (3, 6),
        (3, 8),
        (4, 6),
        (4, 8),
        (4, 10),
        (5, 7),
        (5, 8),
        (5, 9),
        (5, 10),
        (6, 8),
        (6, 9),
        (6, 10),
        (6, 11),
        (7, 10),
        (7, 13),
    ];
    for (m, n) in cells {
        let r = families::construct(m, n, &cfg()).unwrap_or_else(|e| panic!("({m},{n}): {e}"));
        assert_eq!((r.m, r.n), (m, n));
        let sys = derive_system(&r.curve).unwrap();
        assert_eq!(sys, r.system);
        assert_eq!(sys.degrees(), (m, n));
        let count = certify(&r.curve).unwrap().certified_count;
        assert_eq!(count, formula(m, n), "({m},{n})");
        assert_eq!(count, r.target);
        assert!(
            bounds(m, n).admits(count),
            "({m},{n}) exceeds the upper bound"
        );
        assert!(residual_vanishes(&sys, &r.curve), "({m},{n})");
    }
}

#[test]
fn families_are_dispatched_by_cell() {
    let expect = [
        ((2, 5), Family::HighN),
        ((4, 8), Family::NTwoM),
        ((4, 6), Family::CaseI),
        ((5, 9), Family::CaseIiI),
        ((6, 10), Family::CaseIiIi),
        ((5, 8), Family::CaseIiIii),
    ];
    for ((m, n), fam) in expect {
        assert_eq!(
            families::construct(m, n, &cfg()).unwrap().family,
            fam,
            "({m},{n})"
        );
    }
}

#[test]
fn high_n_cycles_sit_on_unit_strips() {
    // m even: strips [2i-1, 2i]; m odd: [2i, 2i+1].
    for (m, n) in [(4, 9), (3, 7)] {
        let r = families::construct_high_n(m, n, &cfg()).unwrap();
        let report = certify(&r.curve).unwrap();
        let strips: Vec<(Rational, Rational)> = report
            .certified_intervals()
            .map(|(a, b)| (a.value().unwrap().clone(), b.value().unwrap().clone()))
            .collect();
        let want: Vec<(Rational, Rational)> = (1..=m as i64 / 2)
            .map(|i| {
                if m % 2 == 0 {
                    (rat(2 * i - 1), rat(2 * i))
                } else {
                    (rat(2 * i), rat(2 * i + 1))
                }
            })
            .collect();
        assert_eq!(strips, want, "({m},{n})");
    }
}

#[test]
fn one_sided_perturbation_ladders() {
    for (h, l) in [(0, 0), (0, 2), (1, 1), (2, 0), (2, 1)] {
        let s = rat(l as i64 + 2);
        let (c, perturbed) = perturb_lemma7(h, l, &s, &cfg()).unwrap();
        assert_eq!(c.degree(), Some(2 * h), "h = {h}");
        assert!(positive_on(&c, &Rational::zero(), &s), "h = {h}, l = {l}");
        let q1 = &(&Poly::from_ints(&[0, 1]).pow(2 * h + 1) * &Poly::linear_root(&s))
            * &int_roots_squared(l);
        assert_eq!(perturbed, &q1 + &c);
        assert!(is_squarefree(&perturbed));
        assert_eq!(distinct_real_roots(&perturbed), perturbed.degree().unwrap());
        let mut breaks = vec![Rational::zero()];
        breaks.extend((1..=l as i64).map(rat));
        breaks.push(s.clone());
        let mut want = vec![2 * h + 2];
        want.extend(std::iter::repeat_n(2, l));
        assert_eq!(gap_counts(&perturbed, &breaks), want, "h = {h}, l = {l}");
    }
}

#[test]
fn two_sided_perturbation_ladders() {
    for (h, l) in [(1, 0), (1, 2), (2, 0), (2, 1)] {
        let (s1, s2) = (rat(-2), rat(l as i64 + 2));
        let (c, perturbed) = perturb_lemma8(h, l, &s1, &s2, &cfg()).unwrap();
        assert_eq!(c.degree(), Some(2 * h - 1));
        assert!(positive_on(&c, &s1, &s2), "h = {h}, l = {l}");
        assert!(is_squarefree(&perturbed));
        assert_eq!(distinct_real_roots(&perturbed), perturbed.degree().unwrap());
        let mut breaks = vec![s1.clone(), Rational::zero()];
        breaks.extend((1..=l as i64).map(rat));
        breaks.push(s2.clone());
        let mut want = vec![2, 2 * h];
        want.extend(std::iter::repeat_n(2, l));
        assert_eq!(gap_counts(&perturbed, &breaks), want, "h = {h}, l = {l}");
    }
}

#[test]
fn perturbation_preconditions() {
    assert!(matches!(
        perturb_lemma7(1, 2, &rat(3), &cfg()),
        Err(FamilyError::Precondition(_))
    ));
    assert!(matches!(
        perturb_lemma8(0, 0, &rat(-2), &rat(2), &cfg()),
        Err(FamilyError::Precondition(_))
    ));
    assert!(matches!(
        perturb_lemma8(1, 0, &rat(-1), &rat(2), &cfg()),
        Err(FamilyError::Precondition(_))
    ));
}

#[test]
fn lift_of_worked_curve() {
    let c = worked_curve();
    let once = families::lift(&c, None, &cfg()).unwrap();
    assert_eq!((once.m, once.n), (3, 7));
    assert_eq!(once.curve.p.degree(), Some(4));
    assert_eq!(once.curve.q.degree(), Some(8));
    assert!(certify(&once.curve).unwrap().certified_count >= 1);
    let twice = families::lift(&once.curve, None, &cfg()).unwrap();
    assert_eq!((twice.m, twice.n), (4, 9));
    assert!(certify(&twice.curve).unwrap().certified_count >= 1);
    assert!(residual_vanishes(&twice.system, &twice.curve));
}

#[test]
fn lift_never_loses_cycles() {
    for (m, n) in [(4, 8), (5, 9), (4, 6)] {
        let base = families::construct(m, n, &cfg()).unwrap();
        let t = base.report.certified_count;
        let lifted = families::lift(&base.curve, None, &cfg()).unwrap();
        assert_eq!((lifted.m, lifted.n), (m + 1, n + 2));
        assert!(
            certify(&lifted.curve).unwrap().certified_count >= t,
            "({m},{n})"
        );
    }
}

#[test]
fn lift_with_explicit_s() {
    let r = families::lift(&worked_curve(), Some(rat(1000)), &cfg()).unwrap();
    let lin = Poly::linear_root(&rat(1000));
    assert_eq!(r.curve.p, &worked_curve().p * &lin);
    assert_eq!(r.curve.q, &worked_curve().q * &lin.pow(2));
}

#[test]
fn tiny_s_cap_exhausts_the_search() {
    let tight = SearchConfig {
        s_cap: BigInt::from(2),
        ..cfg()
    };
    assert!(matches!(
        families::construct_high_n(2, 5, &tight),
        Err(FamilyError::SearchExhausted { .. })
    ));
}

#[test]
fn user_pattern_for_case_i() {
    let mut pattern = default_case_i_pattern(4, 6).unwrap();
    let r = construct_case_i_with(4, 6, &pattern, &cfg()).unwrap();
    assert_eq!(r.report.certified_count, 1);
    // collapsing the ladder order is rejected before any search
    pattern.slots.reverse();
    if pattern.slots.len() > 1 {
        assert!(construct_case_i_with(4, 6, &pattern, &cfg()).is_err());
    }
    let text = serde_json::to_string(&default_case_i_pattern(5, 7).unwrap()).unwrap();
    let back: RootPattern = serde_json::from_str(&text).unwrap();
    assert_eq!(
        construct_case_i_with(5, 7, &back, &cfg())
            .unwrap()
            .report
            .certified_count,
        1
    );
}

#[test]
fn out_of_range_cells() {
    for (m, n) in [(1, 3), (2, 3), (3, 4), (4, 7)] {
        assert!(
            matches!(
                families::construct(m, n, &cfg()),
                Err(FamilyError::Precondition(_))
            ),
            "({m},{n})"
        );
    }
    assert!(matches!(
        families::construct(8, 10, &cfg()),
        Err(FamilyError::PatternNotAchieved(_))
    ));
}
