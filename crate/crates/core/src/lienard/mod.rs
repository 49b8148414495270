//! Liénard systems `x' = y, y' = -f(x) y - g(x)` carrying a hyperelliptic
//! invariant curve `(y + P(x))^2 - Q(x) = 0`.

mod bounds;
mod certify;

use serde::{Deserialize, Serialize};

use crate::polyx::{BivariatePoly, Poly};

pub use bounds::{bounds, Bounds};
pub use certify::{certify, CertificationReport, IntervalVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LienardError {
    #[error("(P, Q) does not define a polynomial Liénard system: {0}")]
    NonPolynomialSystem(String),
}

/// The curve `(y + P)^2 - Q = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticCurve {
    #[serde(rename = "P")]
    pub p: Poly,
    #[serde(rename = "Q")]
    pub q: Poly,
}

impl HyperellipticCurve {
    pub fn new(p: Poly, q: Poly) -> Self {
        HyperellipticCurve { p, q }
    }

    /// `F(x, y) = (y + P)^2 - Q` as a bivariate polynomial.
    pub fn equation(&self) -> BivariatePoly {
        let s = BivariatePoly::new(vec![self.p.clone(), Poly::one()]);
        &(&s * &s) - &BivariatePoly::from_x(self.q.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LienardSystem {
    pub f: Poly,
    pub g: Poly,
}

impl LienardSystem {
    pub fn new(f: Poly, g: Poly) -> Self {
        LienardSystem { f, g }
    }

    /// Degree of `f`.
    pub fn m(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    /// Degree of `g`.
    pub fn n(&self) -> usize {
        self.g.degree().unwrap_or(0)
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.m(), self.n())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cofactor {
    #[serde(rename = "K")]
    pub k: Poly,
}

fn non_poly(msg: impl Into<String>) -> LienardError {
    LienardError::NonPolynomialSystem(msg.into())
}

/// `f = P' + P Q' / (2Q)` and `g = Q' (P^2 - Q) / (2Q)`.
pub fn derive_system(curve: &HyperellipticCurve) -> Result<LienardSystem, LienardError> {
    let (p, q) = (&curve.p, &curve.q);
    if q.is_zero() {
        return Err(non_poly("Q is the zero polynomial"));
    }
    let dq = q.derivative();
    let two_q = q.scale(&crate::polyx::rat(2));
    let f_tail = (p * &dq)
        .div_exact(&two_q)
        .ok_or_else(|| non_poly("2Q does not divide P Q'"))?;
    let g = (&dq * &(&(p * p) - q))
        .div_exact(&two_q)
        .ok_or_else(|| non_poly("2Q does not divide Q' (P^2 - Q)"))?;
    let f = &p.derivative() + &f_tail;
    if g.is_zero() {
        return Err(non_poly("g vanishes identically"));
    }
    if g.is_constant() {
        return Err(non_poly(
            "g is a nonzero constant, so the system has no singular point",
        ));
    }
    if f.is_zero() {
        return Err(non_poly("f vanishes identically"));
    }
    Ok(LienardSystem { f, g })
}

/// The cofactor `K = -P Q' / Q`, a polynomial in `x` alone.
pub fn cofactor(curve: &HyperellipticCurve) -> Result<Cofactor, LienardError> {
    if curve.q.is_zero() {
        return Err(non_poly("Q is the zero polynomial"));
    }
    let num = &curve.p * &curve.q.derivative();
    let k = num
        .div_exact(&curve.q)
        .ok_or_else(|| non_poly("Q does not divide P Q'"))?;
    Ok(Cofactor { k: -k })
}

/// `y F_x - (f y + g) F_y - K F`, expanded.
pub fn invariance_residual(
    sys: &LienardSystem,
    curve: &HyperellipticCurve,
    k: &Poly,
) -> BivariatePoly {
    let big_f = curve.equation();
    let y = BivariatePoly::y();
    let flow = BivariatePoly::new(vec![sys.g.clone(), sys.f.clone()]);
    let lhs = &(&y * &big_f.partial_x()) - &(&flow * &big_f.partial_y());
    &lhs - &(&BivariatePoly::from_x(k.clone()) * &big_f)
}

/// True iff the curve is invariant under the system with cofactor
/// `-P Q' / Q`.
pub fn invariance_check(sys: &LienardSystem, curve: &HyperellipticCurve) -> bool {
    match cofactor(curve) {
        Ok(c) => invariance_residual(sys, curve, &c.k).is_zero(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyx::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    /// `P = (x-1)(x-2)(x+10)`, `Q = -10 (x-1)(x-2)(x+10)^4`.
    pub(crate) fn worked_curve() -> HyperellipticCurve {
        let r = p(&[-1, 1]) * p(&[-2, 1]);
        let s = p(&[10, 1]);
        HyperellipticCurve::new(&r * &s, (&r * &s.pow(4)).scale(&rat(-10)))
    }

    #[test]
    fn worked_system_degrees_and_f() {
        let curve = worked_curve();
        let sys = derive_system(&curve).unwrap();
        assert_eq!(sys.degrees(), (2, 5));
        let r = p(&[-1, 1]) * p(&[-2, 1]);
        let s = p(&[10, 1]);
        // P Q'/(2Q) = (R'(x+10) + 4R)/2 after cancelling
        let tail = (&(&r.derivative() * &s) + &r.scale(&rat(4))).scale(&crate::polyx::ratio(1, 2));
        assert_eq!(sys.f, &curve.p.derivative() + &tail);
        assert!(invariance_check(&sys, &curve));
    }

    #[test]
    fn worked_cofactor() {
        let curve = worked_curve();
        let r = p(&[-1, 1]) * p(&[-2, 1]);
        let s = p(&[10, 1]);
        let want = -(&(&r.derivative() * &s) + &r.scale(&rat(4)));
        assert_eq!(cofactor(&curve).unwrap().k, want);
    }

    #[test]
    fn degenerate_curves_rejected() {
        let sq = HyperellipticCurve::new(p(&[0, 1]), p(&[0, 0, 1]));
        assert!(matches!(
            derive_system(&sq),
            Err(LienardError::NonPolynomialSystem(_))
        ));
        let flat = HyperellipticCurve::new(p(&[1, 2, 3]), p(&[5]));
        assert!(derive_system(&flat).is_err());
        assert_eq!(cofactor(&flat).unwrap().k, Poly::zero());
        let zero_q = HyperellipticCurve::new(p(&[1, 1]), Poly::zero());
        assert!(derive_system(&zero_q).is_err());
        // Q = x^3 does not divide P Q' for P = x + 1
        let bad = HyperellipticCurve::new(p(&[1, 1]), p(&[0, 0, 0, 1]));
        assert!(derive_system(&bad).is_err());
        assert!(cofactor(&bad).is_err());
    }

    #[test]
    fn perturbed_g_breaks_invariance() {
        let curve = worked_curve();
        let mut sys = derive_system(&curve).unwrap();
        sys.g = &sys.g + &Poly::one();
        assert!(!invariance_check(&sys, &curve));
    }

    #[test]
    fn residual_expansion_of_worked_pair() {
        let curve = worked_curve();
        let sys = derive_system(&curve).unwrap();
        let k = cofactor(&curve).unwrap().k;
        let y = BivariatePoly::y();
        assert_eq!((&y * &curve.equation().partial_x()).total_degree(), Some(6));
        assert!(invariance_residual(&sys, &curve, &k).is_zero());
    }
}
