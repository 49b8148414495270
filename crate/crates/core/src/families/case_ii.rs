//! Case (ii), `floor((4m + 2) / 3) < n < 2m`: polynomial perturbations of
//! a template with a high-order root at 0, or a reduction to `(m-1, n-2)`
//! followed by a lift.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    approx_min, assemble, evaluate, exhausted, finish, half_pow, knee, ladder_ok, lift,
    prod_linear, ConstructionResult, Family, FamilyError, Param, SearchConfig,
};
use crate::polyx::{rat, Poly, Rational};
use crate::rootclass::{count_closed, sign_on_interval, SignVerdict};

fn int_roots_squared(l: usize) -> Poly {
    prod_linear(1..=l as i64).pow(2)
}

fn one_sided_q1(h: usize, l: usize, s: &Rational) -> Poly {
    &(&Poly::linear_root(s) * &Poly::monomial(rat(1), 2 * h + 1)) * &int_roots_squared(l)
}

fn two_sided_q1(h: usize, l: usize, s1: &Rational, s2: &Rational) -> Poly {
    let ends = &Poly::linear_root(s1) * &Poly::linear_root(s2);
    &(&ends * &Poly::monomial(rat(1), 2 * h)) * &int_roots_squared(l)
}

/// Break points and per-gap root counts of the ladder: `lo`, then 0 when
/// it is interior, then `1..=l`, then `hi`.
fn ladder(
    first_gap: &[usize],
    l: usize,
    lo: &Rational,
    hi: &Rational,
) -> (Vec<Rational>, Vec<usize>) {
    let mut breaks = vec![lo.clone()];
    let mut counts = Vec::new();
    if lo < &Rational::zero() {
        breaks.push(Rational::zero());
    }
    counts.extend_from_slice(first_gap);
    breaks.extend((1..=l as i64).map(rat));
    counts.extend(std::iter::repeat_n(2, l));
    breaks.push(hi.clone());
    (breaks, counts)
}

fn positive_on(c: &Poly, lo: &Rational, hi: &Rational) -> bool {
    c.sign_at(lo) > 0 && c.sign_at(hi) > 0 && sign_on_interval(c, lo, hi) == SignVerdict::Positive
}

/// One induction step: from `c*` valid for `Q1 / x^2`, find `d` then `b`
/// so that `c = x^2 c* - d x + b` is positive on `[lo, hi]` and `Q1 + c`
/// satisfies `ok`.
fn induction_step(
    q1: &Poly,
    cstar: &Poly,
    lo: &Rational,
    hi: &Rational,
    ok: &dyn Fn(&Poly) -> bool,
    cfg: &SearchConfig,
) -> Option<Poly> {
    let x = Poly::x();
    let xc = &x * cstar;
    let x2c = &x * &xc;
    for j in 1..=cfg.max_halvings {
        let d = half_pow(j);
        if count_closed(&(&xc - &Poly::constant(d.clone())), lo, hi) != 1 {
            continue;
        }
        let phi = &x2c - &x.scale(&d);
        let (gamma, phi_min) = approx_min(&phi, lo, hi);
        let depth = -q1.eval(&gamma);
        if !depth.is_positive() {
            continue;
        }
        for theta in [1, 2, 3, 4, 6, 7].map(|k| Rational::new(k.into(), 8.into())) {
            let b = -&phi_min + &depth * &theta;
            let c = &phi + &Poly::constant(b);
            if positive_on(&c, lo, hi) && ok(&(q1 + &c)) {
                return Some(c);
            }
        }
    }
    None
}

fn one_sided_c(h: usize, l: usize, s: &Rational, cfg: &SearchConfig) -> Result<Poly, FamilyError> {
    let q1 = one_sided_q1(h, l, s);
    let zero = Rational::zero();
    let (breaks, counts) = ladder(&[2 * h + 2], l, &zero, s);
    let ok = |f: &Poly| ladder_ok(f, &breaks, &counts);
    if h == 0 {
        return (0..=cfg.max_halvings)
            .map(|j| Poly::constant(half_pow(j)))
            .find(|c| ok(&(&q1 + c)))
            .ok_or_else(|| {
                exhausted("one-sided base", format!("no epsilon for l = {l}, s = {s}"))
            });
    }
    let cstar = one_sided_c(h - 1, l, s, cfg)?;
    induction_step(&q1, &cstar, &zero, s, &ok, cfg).ok_or_else(|| {
        exhausted(
            "one-sided step",
            format!("no (d, b) for h = {h}, l = {l}, s = {s}"),
        )
    })
}

/// `c(x)` of degree `2h`, positive on `[0, s]`, such that
/// `Q1 + c` with `Q1 = (x - s) x^(2h+1) prod_{i=1}^l (x - i)^2` has only
/// simple real roots: `2h + 2` in `(0, 1)` (or `(0, s)` when `l = 0`) and
/// two in each of `(1, 2), ..., (l - 1, l), (l, s)`.
pub fn perturb_lemma7(
    h: usize,
    l: usize,
    s: &Rational,
    cfg: &SearchConfig,
) -> Result<(Poly, Poly), FamilyError> {
    if s <= &rat(l as i64 + 1) {
        return Err(FamilyError::Precondition(format!(
            "need s > l + 1, got s = {s}, l = {l}"
        )));
    }
    let c = one_sided_c(h, l, s, cfg)?;
    let perturbed = &one_sided_q1(h, l, s) + &c;
    Ok((c, perturbed))
}

fn two_sided_c(
    h: usize,
    l: usize,
    s1: &Rational,
    s2: &Rational,
    cfg: &SearchConfig,
) -> Result<Poly, FamilyError> {
    let q1 = two_sided_q1(h, l, s1, s2);
    let (breaks, counts) = ladder(&[2, 2 * h], l, s1, s2);
    let ok = |f: &Poly| ladder_ok(f, &breaks, &counts);
    if h == 1 {
        // c = eps (1 + delta x), delta small enough to keep 1 + delta x >= 1/2.
        let reach = if -s1 > *s2 { -s1.clone() } else { s2.clone() };
        let delta = Rational::one() / (reach * rat(2));
        let shape = Poly::new(vec![Rational::one(), delta]);
        return (0..=cfg.max_halvings)
            .map(|j| shape.scale(&half_pow(j)))
            .find(|c| positive_on(c, s1, s2) && ok(&(&q1 + c)))
            .ok_or_else(|| exhausted("two-sided base", format!("no epsilon for l = {l}")));
    }
    let cstar = two_sided_c(h - 1, l, s1, s2, cfg)?;
    induction_step(&q1, &cstar, s1, s2, &ok, cfg)
        .ok_or_else(|| exhausted("two-sided step", format!("no (d, b) for h = {h}, l = {l}")))
}

/// `c(x)` of degree `2h - 1`, positive on `[s1, s2]`, such that `Q1 + c`
/// with `Q1 = (x - s1)(x - s2) x^(2h) prod_{i=1}^l (x - i)^2` has only
/// simple real roots: two in `(s1, 0)`, `2h` in `(0, 1)` (or `(0, s2)`
/// when `l = 0`) and two in each later gap.
pub fn perturb_lemma8(
    h: usize,
    l: usize,
    s1: &Rational,
    s2: &Rational,
    cfg: &SearchConfig,
) -> Result<(Poly, Poly), FamilyError> {
    if h == 0 || s1 >= &rat(-1) || s2 <= &rat(l as i64 + 1) {
        return Err(FamilyError::Precondition(format!(
            "need h >= 1, s1 < -1, s2 > l + 1; got h = {h}, s1 = {s1}, s2 = {s2}, l = {l}"
        )));
    }
    let c = two_sided_c(h, l, s1, s2, cfg)?;
    let perturbed = &two_sided_q1(h, l, s1, s2) + &c;
    Ok((c, perturbed))
}

/// Assembles and certifies `Q1 + c`; on failure perturbs the coefficients
/// of `c` by small seeded rationals, keeping positivity and the ladder.
#[allow(clippy::too_many_arguments)]
fn certify_with_jitter(
    family: Family,
    m: usize,
    n: usize,
    target: usize,
    q1: &Poly,
    c: &Poly,
    (lo, hi): (&Rational, &Rational),
    ladder_check: &dyn Fn(&Poly) -> bool,
    mut params: BTreeMap<String, Param>,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let scale = c
        .coeffs()
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.abs())
        .min()
        .unwrap_or_else(Rational::one);
    for round in 0..=cfg.jitter_rounds {
        let candidate = if round == 0 {
            c.clone()
        } else {
            let size = &scale * half_pow(4 + (round as u32 % 16));
            let coeffs = c
                .coeffs()
                .iter()
                .map(|v| v + &size * rat(rng.gen_range(-4i64..=4)))
                .collect();
            Poly::new(coeffs)
        };
        if candidate.degree() != c.degree() || !positive_on(&candidate, lo, hi) {
            continue;
        }
        let p1 = q1 + &candidate;
        if !ladder_check(&p1) {
            continue;
        }
        let curve = assemble(q1, &p1);
        if let Some(found) = evaluate(&curve, m, n, |k| k == target) {
            params.insert("c".into(), Param::Poly(candidate));
            params.insert("jitter_round".into(), Param::Value(rat(round as i64)));
            return finish(family, target, curve, found, params);
        }
    }
    Err(exhausted(
        "jitter",
        format!("no perturbation of c certifies {target} cycles for ({m}, {n})"),
    ))
}

pub fn construct_case_ii(
    m: usize,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    if m < 2 || n <= knee(m) || n >= 2 * m || (m, n) == (3, 5) || (m, n) == (2, 4) {
        return Err(FamilyError::Precondition(format!(
            "case (ii) needs floor((4m+2)/3) < n < 2m outside (3,5), (2,4); got ({m}, {n})"
        )));
    }
    let target = (n - 1) / 4;
    match (n - 1) % 4 {
        0 => {
            let t = target;
            let h = 3 * t - m;
            let l = m - 2 * t - 1;
            let s = rat((2 * m - 2 * t) as i64);
            let (c, _) = perturb_lemma7(h, l, &s, cfg)?;
            let q1 = one_sided_q1(h, l, &s);
            let (breaks, counts) = ladder(&[2 * h + 2], l, &Rational::zero(), &s);
            let check = |f: &Poly| ladder_ok(f, &breaks, &counts);
            let params = BTreeMap::from([("s".to_string(), Param::Value(s.clone()))]);
            certify_with_jitter(
                Family::CaseIiI,
                m,
                n,
                target,
                &q1,
                &c,
                (&Rational::zero(), &s),
                &check,
                params,
                cfg,
            )
        }
        1 => {
            let t = (n - 2) / 4;
            let h = 3 * t + 1 - m;
            let l = m - 2 * t - 2;
            let s1 = rat(-2);
            let mut last = None;
            for s2 in [l + 2, 2 * l + 4, 4 * l + 8].map(|v| rat(v as i64)) {
                let attempt = perturb_lemma8(h, l, &s1, &s2, cfg).and_then(|(c, _)| {
                    let q1 = two_sided_q1(h, l, &s1, &s2);
                    let (breaks, counts) = ladder(&[2, 2 * h], l, &s1, &s2);
                    let check = |f: &Poly| ladder_ok(f, &breaks, &counts);
                    let params = BTreeMap::from([
                        ("s1".to_string(), Param::Value(s1.clone())),
                        ("s2".to_string(), Param::Value(s2.clone())),
                    ]);
                    certify_with_jitter(
                        Family::CaseIiIi,
                        m,
                        n,
                        target,
                        &q1,
                        &c,
                        (&s1, &s2),
                        &check,
                        params,
                        cfg,
                    )
                });
                match attempt {
                    Ok(r) => return Ok(r),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("at least one s2 tried"))
        }
        _ => {
            let (pm, pn) = (m - 1, n - 2);
            if (pm, pn) == (3, 5) || (pm, pn) == (2, 4) {
                return Err(FamilyError::Precondition(format!(
                    "({m}, {n}) reduces to ({pm}, {pn}), which has no hyperelliptic limit cycles"
                )));
            }
            let base = if pn <= knee(pm) {
                super::construct_case_i(pm, pn, cfg)?
            } else {
                construct_case_ii(pm, pn, cfg)?
            };
            let mut lifted = lift(&base.curve, None, cfg)?;
            if lifted.report.certified_count != target {
                return Err(FamilyError::Defect(format!(
                    "lift certified {} cycles, expected {target}",
                    lifted.report.certified_count
                )));
            }
            lifted.family = Family::CaseIiIii;
            lifted.target = target;
            lifted
                .parameters
                .insert("base_m".into(), Param::Value(rat(pm as i64)));
            lifted
                .parameters
                .insert("base_n".into(), Param::Value(rat(pn as i64)));
            Ok(lifted)
        }
    }
}
