//! Oracles shared by the integration tests. Written against the public
//! `Poly` arithmetic only, independent of `rootclass` and `lienard`.
#![allow(dead_code)]

use lienard_cycles::lienard::{HyperellipticCurve, LienardSystem};
use lienard_cycles::polyx::{rat, Poly, Rational};
use num_traits::{Signed, Zero};

/// Classical Sturm chain `f, f', -rem(...)`.
pub fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    while !chain.last().unwrap().is_zero() {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1]).unwrap();
        chain.push(-&r);
    }
    chain.pop();
    chain
}

fn variations(chain: &[Poly], x: &Rational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in `(a, b]`. Counts correctly for non-squarefree `f`.
pub fn count_between(f: &Poly, a: &Rational, b: &Rational) -> usize {
    let chain = sturm_chain(f);
    variations(&chain, a) - variations(&chain, b)
}

/// `1 + max |a_i / a_n|`, plus one for safety.
pub fn root_bound(f: &Poly) -> Rational {
    let lc = f.leading_coeff();
    f.coeffs()
        .iter()
        .map(|c| (c / &lc).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + rat(2)
}

pub fn distinct_real_roots(f: &Poly) -> usize {
    let b = root_bound(f);
    count_between(f, &-b.clone(), &b)
}

/// `f > 0` on the closed interval `[a, b]`.
pub fn positive_on(f: &Poly, a: &Rational, b: &Rational) -> bool {
    f.eval(a).is_positive() && count_between(f, a, b) == 0
}

pub fn is_squarefree(f: &Poly) -> bool {
    Poly::gcd(f, &f.derivative()).is_constant()
}

/// `Q (y F_x - (f y + g) F_y) + P Q' F` with `F = (y + P)^2 - Q`, checked on
/// a grid large enough to force the polynomial to vanish identically. It is
/// `Q` times the invariance residual with cofactor `-P Q' / Q`.
pub fn residual_vanishes(sys: &LienardSystem, c: &HyperellipticCurve) -> bool {
    let deg = |p: &Poly| p.degree().unwrap_or(0);
    let (p, q) = (&c.p, &c.q);
    let (dp, dq) = (p.derivative(), q.derivative());
    let x_points = 2 * deg(q) + 2 * deg(p) + deg(&sys.f) + deg(&sys.g) + 4;
    for i in 0..x_points {
        let x = Rational::new((i as i64 - (x_points as i64) / 2).into(), 3.into());
        let (pv, qv, dpv, dqv) = (p.eval(&x), q.eval(&x), dp.eval(&x), dq.eval(&x));
        let (fv, gv) = (sys.f.eval(&x), sys.g.eval(&x));
        for j in 0..3 {
            let y = rat(j);
            let s = &y + &pv;
            let big_f = &s * &s - &qv;
            let fx = rat(2) * &s * &dpv - &dqv;
            let fy = rat(2) * &s;
            let flow = &y * &fx - (&fv * &y + &gv) * &fy;
            if !(&qv * flow + &pv * &dqv * big_f).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The curve used throughout: `P = (x-1)(x-2)(x+10)`,
/// `Q = -10 (x-1)(x-2)(x+10)^4`, type (2, 5).
pub fn worked_curve() -> HyperellipticCurve {
    let r = Poly::from_ints(&[2, -3, 1]);
    let s = Poly::from_ints(&[10, 1]);
    HyperellipticCurve::new(&r * &s, (&r * &s.pow(4)).scale(&rat(-10)))
}
