//! Case (i), `m + 2 <= n <= floor((4m + 2) / 3)`: perturbation of a
//! template `Q1` by a positive constant `c`.
//!
//! The template has one or two simple roots and `t` extra double roots
//! where `t = (4m - 3n + 3) / 2` (n odd) or `(4m - 3n + 2) / 2` (n even);
//! `P1 = Q1 + c` must acquire exactly `t` double roots while every other
//! root splits into a simple pair. `t = 0` is a halving search on `c`,
//! `t = 1` solves the free template root for a tangency at a chosen point,
//! and `t = 2` with `n` odd uses an even template `Q1(x) = q(x^2)` whose
//! single tangency in `u = x^2` gives both double roots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{
    assemble, evaluate, finish, half_pow, knee, ConstructionResult, Family, FamilyError, Param,
    RootPattern, SearchConfig,
};
use crate::polyx::{rat, ratio, Poly, Rational};
use crate::rootclass::{count_roots, isolate_real_roots, rational_det};

fn degree_t(m: usize, n: usize) -> Result<usize, FamilyError> {
    if m < 2 || n < m + 2 || n > knee(m) {
        return Err(FamilyError::Precondition(format!(
            "case (i) needs m + 2 <= n <= floor((4m+2)/3), got ({m}, {n})"
        )));
    }
    let num = if n % 2 == 1 {
        4 * m + 3 - 3 * n
    } else {
        4 * m + 2 - 3 * n
    };
    if num % 2 != 0 {
        return Err(FamilyError::Precondition(format!(
            "t is not an integer for ({m}, {n})"
        )));
    }
    Ok(num / 2)
}

/// Default template for `t <= 1`: double roots at `1..=k` (`k = n-m-1`),
/// a simple root at `k + 1`, and for `t = 1` a free root to the left of 1
/// (simple for odd `n`, double for even `n`).
pub fn default_case_i_pattern(m: usize, n: usize) -> Result<RootPattern, FamilyError> {
    let t = degree_t(m, n)?;
    let k = n - m - 1;
    let mut slots = Vec::new();
    match t {
        0 => {}
        1 => slots.push(RootPattern::slot(
            "free",
            None,
            if n % 2 == 1 { 1 } else { 2 },
        )),
        _ => {
            return Err(FamilyError::PatternNotAchieved(format!(
                "no default template with t = {t} for ({m}, {n})"
            )))
        }
    }
    for i in 1..=k {
        slots.push(RootPattern::slot(&format!("y{i}"), Some(rat(i as i64)), 2));
    }
    slots.push(RootPattern::slot("a", Some(rat(k as i64 + 1)), 1));
    Ok(RootPattern { slots })
}

pub fn construct_case_i(
    m: usize,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    let t = degree_t(m, n)?;
    match t {
        0 | 1 => construct_case_i_with(m, n, &default_case_i_pattern(m, n)?, cfg),
        2 if n % 2 == 1 => construct_even_template(m, n).or_else(|_| construct_dual_linear(m, n)),
        _ => Err(FamilyError::PatternNotAchieved(format!(
            "({m}, {n}) needs {t} simultaneous tangencies; only t <= 1 and odd n with t = 2 are searched"
        ))),
    }
}

fn all_real_squarefree(w: &Poly) -> bool {
    match (w.degree(), count_roots(w)) {
        (Some(0), _) => true,
        (Some(d), Ok(c)) => c.distinct_real == d,
        _ => false,
    }
}

/// Case (i) from an explicit template for `Q1` (monic, roots as listed).
pub fn construct_case_i_with(
    m: usize,
    n: usize,
    pattern: &RootPattern,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    let t = degree_t(m, n)?;
    pattern.validate()?;
    if pattern.degree() != 2 * m + 1 - n {
        return Err(FamilyError::Precondition(format!(
            "template degree {} differs from 2m - n + 1 = {}",
            pattern.degree(),
            2 * m + 1 - n
        )));
    }
    if pattern.free_slot_count() != t {
        return Err(FamilyError::PatternNotAchieved(format!(
            "template has {} free slots but t = {t}",
            pattern.free_slot_count()
        )));
    }
    let target = n - m - 1;
    let fixed = pattern.fixed_part();
    let Some(free) = pattern.free_index() else {
        for j in 0..=cfg.max_halvings {
            let c = half_pow(j);
            let p1 = &fixed + &Poly::constant(c.clone());
            if !all_real_squarefree(&p1) {
                continue;
            }
            let curve = assemble(&fixed, &p1);
            if let Some(found) = evaluate(&curve, m, n, |k| k == target) {
                let params = BTreeMap::from([("c".to_string(), Param::Value(c))]);
                return finish(Family::CaseI, target, curve, found, params);
            }
        }
        return Err(FamilyError::PatternNotAchieved(
            "no c = 2^-j yields the ladder".into(),
        ));
    };

    let e = pattern.slots[free].multiplicity;
    let Some(right) = pattern.slots.get(free + 1).and_then(|s| s.location.clone()) else {
        return Err(FamilyError::PatternNotAchieved(
            "the free slot needs a fixed slot to its right".into(),
        ));
    };
    let dfixed = fixed.derivative();
    for j in 1..=cfg.max_halvings {
        let z = &right - half_pow(j);
        let (hz, dhz) = (fixed.eval(&z), dfixed.eval(&z));
        if dhz.is_zero() {
            continue;
        }
        // (x - rho)^e h has a critical point at z iff rho = z + e h(z) / h'(z).
        let rho = &z + &(&hz / &dhz) * rat(e as i64);
        if rho >= z || pattern.resolved(&rho).is_none() {
            continue;
        }
        let q1 = &fixed * &Poly::linear_root(&rho).pow(e);
        let c = -q1.eval(&z);
        if c <= Rational::zero() {
            continue;
        }
        let p1 = &q1 + &Poly::constant(c.clone());
        let zz = Poly::linear_root(&z).pow(2);
        let Some(w) = p1.div_exact(&zz) else { continue };
        if w.eval(&z).is_zero() || !all_real_squarefree(&w) {
            continue;
        }
        let curve = assemble(&q1, &p1);
        if let Some(found) = evaluate(&curve, m, n, |k| k == target) {
            let params = BTreeMap::from([
                ("c".to_string(), Param::Value(c)),
                ("z".to_string(), Param::Value(z)),
                (pattern.slots[free].name.clone(), Param::Value(rho)),
            ]);
            return finish(Family::CaseI, target, curve, found, params);
        }
    }
    Err(FamilyError::PatternNotAchieved(format!(
        "no tangency point left of {right} yields the ladder"
    )))
}

/// Odd `n`, `t = 2`: `Q1(x) = q(x^2)` with `q(u) = (u - a) u^eps prod (u - j)^2`,
/// `eps = (n - m) mod 2`, `j = 1..=(n-m)/2`. A critical point `u*` of `q`
/// with `q(u*) = -c < 0` makes `x = +-sqrt(u*)` the two double roots.
fn construct_even_template(m: usize, n: usize) -> Result<ConstructionResult, FamilyError> {
    let target = n - m - 1;
    let pairs = (n - m) / 2;
    let eps = (n - m) % 2;
    let h = &Poly::monomial(rat(1), eps)
        * &Poly::from_roots(
            (1..=pairs as i64)
                .map(rat)
                .collect::<Vec<_>>()
                .iter()
                .map(|r| (r, 2)),
        );
    let dh = h.derivative();
    let x2 = Poly::monomial(rat(1), 2);
    for gap in 0..=pairs as i64 {
        for i in 1..16 {
            let u = rat(gap) + ratio(i, 16);
            let (hu, dhu) = (h.eval(&u), dh.eval(&u));
            if hu.is_zero() || dhu.is_zero() {
                continue;
            }
            let a = &u + &(&hu / &dhu);
            if a <= Rational::zero() || a == u || h.eval(&a).is_zero() {
                continue;
            }
            let q = &Poly::linear_root(&a) * &h;
            let c = -q.eval(&u);
            if c <= Rational::zero() {
                continue;
            }
            let q1 = q.compose(&x2);
            let p1 = &q1 + &Poly::constant(c.clone());
            let z = &x2 - &Poly::constant(u.clone());
            let Some(w) = p1.div_exact(&(&z * &z)) else {
                continue;
            };
            if !Poly::gcd(&w, &z).is_constant() || !all_real_squarefree(&w) {
                continue;
            }
            let curve = assemble(&q1, &p1);
            if let Some(found) = evaluate(&curve, m, n, |k| k == target) {
                let params = BTreeMap::from([
                    ("a".to_string(), Param::Value(a)),
                    ("c".to_string(), Param::Value(c)),
                    ("u*".to_string(), Param::Value(u)),
                ]);
                return finish(Family::CaseI, target, curve, found, params);
            }
        }
    }
    Err(FamilyError::PatternNotAchieved(format!(
        "no symmetric tangency certifies {target} cycles for ({m}, {n})"
    )))
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = Poly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if j != i {
                term = (&term * &Poly::linear_root(xj)).scale(&(Rational::one() / (xi - xj)));
            }
        }
        out = &out + &term;
    }
    out
}

/// Unique solution of the augmented system `[M | rhs]`, if any.
fn solve_unique(mut rows: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let unknowns = rows.first()?.len() - 1;
    let mut r = 0;
    for col in 0..unknowns {
        let p = (r..rows.len()).find(|&i| !rows[i][col].is_zero())?;
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=unknowns {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    Some(
        rows[..unknowns]
            .iter()
            .map(|row| row[unknowns].clone())
            .collect(),
    )
}

/// Odd `n`, `t = 2`, no symmetry: fix `B` with roots `-1, 1, 2, ...`, take
/// `Z = x^2 + p x + q` and solve `Z^2 W - A B^2 = c`, which is linear in the
/// lower coefficients of monic `W`, `A` and in `c`. The system has one more
/// equation than unknowns; its consistency determinant is a polynomial in
/// `p` (recovered by interpolation) whose rational roots are taken exactly.
fn construct_dual_linear(m: usize, n: usize) -> Result<ConstructionResult, FamilyError> {
    let target = n - m - 1;
    let nb = n - m;
    let (dw, da) = (2 * nb - 2, 2);
    let d = 2 + 2 * nb;
    let b_roots: Vec<Rational> = std::iter::once(rat(-1))
        .chain((1..nb as i64).map(rat))
        .collect();
    let b = Poly::from_roots(b_roots.iter().map(|r| (r, 1)));
    let b2 = &b * &b;
    let rows_at = |z2: &Poly| -> Vec<Vec<Rational>> {
        (0..d)
            .map(|k| {
                let mut row = Vec::with_capacity(d);
                row.extend((0..dw).map(|j| {
                    if k >= j {
                        z2.coeff(k - j)
                    } else {
                        Rational::zero()
                    }
                }));
                row.extend((0..da).map(|j| {
                    if k >= j {
                        -b2.coeff(k - j)
                    } else {
                        Rational::zero()
                    }
                }));
                row.push(if k == 0 {
                    -Rational::one()
                } else {
                    Rational::zero()
                });
                let top = |p: &Poly, deg: usize| {
                    if k >= deg {
                        p.coeff(k - deg)
                    } else {
                        Rational::zero()
                    }
                };
                row.push(top(&b2, da) - top(z2, dw));
                row
            })
            .collect()
    };
    let z_of = |p: &Rational, q: &Rational| Poly::new(vec![q.clone(), p.clone(), Rational::one()]);
    for i in (-16i64..=16).filter(|&i| i != 0) {
        let q = ratio(i, 8);
        let xs: Vec<Rational> = (0..(2 * dw + 3) as i64).map(rat).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|p| {
                let z = z_of(p, &q);
                rational_det(rows_at(&(&z * &z)))
            })
            .collect();
        let det = interpolate(&xs, &ys);
        if det.is_zero() || det.is_constant() {
            continue;
        }
        for root in isolate_real_roots(&det) {
            let Some(p) = root.value().cloned() else {
                continue;
            };
            let z = z_of(&p, &q);
            let Some(sol) = solve_unique(rows_at(&(&z * &z))) else {
                continue;
            };
            let c = sol[dw + da].clone();
            if c.is_zero() {
                continue;
            }
            let mut wc = sol[..dw].to_vec();
            wc.push(Rational::one());
            let mut ac = sol[dw..dw + da].to_vec();
            ac.push(Rational::one());
            let (w, a) = (Poly::new(wc), Poly::new(ac));
            if !all_real_squarefree(&w)
                || !all_real_squarefree(&z)
                || !all_real_squarefree(&a)
                || !Poly::gcd(&w, &z).is_constant()
                || !Poly::gcd(&a, &b).is_constant()
            {
                continue;
            }
            let q1 = &a * &b2;
            let p1 = &q1 + &Poly::constant(c.clone());
            debug_assert_eq!(p1, &(&z * &z) * &w);
            let curve = assemble(&q1, &p1);
            if let Some(found) = evaluate(&curve, m, n, |k| k == target) {
                let params = BTreeMap::from([
                    ("c".to_string(), Param::Value(c)),
                    ("p".to_string(), Param::Value(p)),
                    ("q".to_string(), Param::Value(q)),
                ]);
                return finish(Family::CaseI, target, curve, found, params);
            }
        }
    }
    Err(FamilyError::PatternNotAchieved(format!(
        "no rational double-tangency certifies {target} cycles for ({m}, {n})"
    )))
}
