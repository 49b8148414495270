use serde::Serialize;

use super::{bounds, derive_system, Bounds, HyperellipticCurve, LienardError};
use crate::polyx::Poly;
use crate::rootclass::{
    count_roots, isolate_between, isolate_real_roots, roots_between, sign_between,
    IsolatingInterval, SignVerdict,
};

/// Verdicts for one candidate strip `[s1, s2]` between adjacent simple
/// real roots of `Q`.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalVerdict {
    pub s1: IsolatingInterval,
    pub s2: IsolatingInterval,
    /// `Q > 0` on `(s1, s2)`.
    pub q_positive: bool,
    /// `P^2 - Q < 0` on `(s1, s2)`.
    pub p2_minus_q_negative: bool,
    /// Distinct roots of `Q'` in `(s1, s2)`.
    pub critical_points: usize,
    /// `gcd(Q', f)` has no root in `(s1, s2)`, so `f(alpha) != 0`.
    pub f_nonzero_at_critical: bool,
    /// `g'(alpha) > 0` at every critical point in the strip.
    pub g_prime_positive: bool,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub m: usize,
    pub n: usize,
    /// `f` and `g` are the polynomials derived from `(P, Q)`.
    pub derived: bool,
    pub q_roots_all_real: bool,
    pub q_roots: Vec<IsolatingInterval>,
    pub conditions: Vec<IntervalVerdict>,
    pub certified_count: usize,
    pub bounds: Bounds,
    pub within_bounds: bool,
}

impl CertificationReport {
    /// Certified strips as `(s1, s2)` pairs.
    pub fn certified_intervals(
        &self,
    ) -> impl Iterator<Item = (&IsolatingInterval, &IsolatingInterval)> {
        self.conditions
            .iter()
            .filter(|v| v.certified)
            .map(|v| (&v.s1, &v.s2))
    }
}

/// Checks the four sufficient conditions for a hyperelliptic limit cycle on
/// every strip between adjacent simple roots of `Q`.
pub fn certify(curve: &HyperellipticCurve) -> Result<CertificationReport, LienardError> {
    let sys = derive_system(curve)?;
    let (m, n) = sys.degrees();
    let q = &curve.q;
    let dq = q.derivative();
    let h = &(&curve.p * &curve.p) - q;
    let dg = sys.g.derivative();
    let common = Poly::gcd(&dq, &sys.f);

    let count = count_roots(q).expect("Q is nonconstant once g is nonzero");
    let q_roots = isolate_real_roots(q);
    let sf_degree = q.squarefree_part().degree().unwrap_or(0);
    let all_real = count.imaginary_pairs == 0 && count.distinct_real == sf_degree;

    let mut conditions = Vec::new();
    for w in q_roots.windows(2) {
        if w[0].multiplicity != 1 || w[1].multiplicity != 1 {
            continue;
        }
        let (mut s1, mut s2) = (w[0].clone(), w[1].clone());
        let q_positive = sign_between(q, &mut s1, &mut s2) == SignVerdict::Positive;
        let p2_minus_q_negative = sign_between(&h, &mut s1, &mut s2) == SignVerdict::Negative;
        let critical = if dq.is_zero() {
            Vec::new()
        } else {
            isolate_between(&dq, &mut s1, &mut s2)
        };
        let f_nonzero_at_critical =
            common.is_constant() || roots_between(&common, &mut s1, &mut s2) == 0;
        let g_prime_positive =
            !critical.is_empty() && critical.into_iter().all(|mut a| a.sign_of(&dg) > 0);
        let critical_points = if dq.is_zero() {
            0
        } else {
            roots_between(&dq, &mut s1, &mut s2)
        };
        let conditions_met = all_real && q_positive && p2_minus_q_negative && f_nonzero_at_critical;
        let mut note = None;
        if !all_real {
            note = Some("Q has non-real roots".to_string());
        } else if conditions_met && critical_points != 1 {
            note = Some(format!(
                "conditions met but Q' has {critical_points} critical points in the strip"
            ));
        }
        conditions.push(IntervalVerdict {
            s1,
            s2,
            q_positive,
            p2_minus_q_negative,
            critical_points,
            f_nonzero_at_critical,
            g_prime_positive,
            certified: conditions_met && critical_points == 1,
            note,
        });
    }
    let certified_count = conditions.iter().filter(|v| v.certified).count();
    let bounds = bounds(m, n);
    Ok(CertificationReport {
        m,
        n,
        derived: true,
        q_roots_all_real: all_real,
        q_roots,
        conditions,
        certified_count,
        within_bounds: bounds.admits(certified_count),
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyx::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn worked_curve_has_one_cycle_on_1_2() {
        let r = p(&[-1, 1]) * p(&[-2, 1]);
        let s = p(&[10, 1]);
        let curve = HyperellipticCurve::new(&r * &s, (&r * &s.pow(4)).scale(&rat(-10)));
        let report = certify(&curve).unwrap();
        assert_eq!((report.m, report.n), (2, 5));
        assert_eq!(report.certified_count, 1);
        let (a, b) = report.certified_intervals().next().unwrap();
        assert_eq!((a.value(), b.value()), (Some(&rat(1)), Some(&rat(2))));
        assert!(report
            .conditions
            .iter()
            .filter(|v| v.certified)
            .all(|v| v.g_prime_positive));
        assert!(report.within_bounds);
    }

    #[test]
    fn no_simple_roots_means_no_cycles() {
        let curve = HyperellipticCurve::new(p(&[0, 0, 1]), p(&[0, 0, 0, 0, 1]));
        match certify(&curve) {
            Ok(r) => assert_eq!(r.certified_count, 0),
            Err(e) => assert!(matches!(e, LienardError::NonPolynomialSystem(_))),
        }
    }

    #[test]
    fn negative_q_between_roots_fails_sign_screen() {
        // Q = (x-1)(x-2)(x+10)^4 is negative on (1, 2)
        let r = p(&[-1, 1]) * p(&[-2, 1]);
        let s = p(&[10, 1]);
        let curve = HyperellipticCurve::new(&r * &s, &r * &s.pow(4));
        let report = certify(&curve).unwrap();
        assert!(report.q_roots_all_real);
        assert_eq!(report.certified_count, 0);
        assert!(report.conditions.iter().all(|v| !v.q_positive));
    }
}
