//! Explicit `(P, Q)` families whose certified cycle counts realize the lower
//! bounds on `H(m, n)`, with exact searches for the "sufficiently small" and
//! "sufficiently large" parameters.
//!
//! Every accepted parameter is accepted only after exact certification of
//! the assembled curve, so a returned result is a proof for that instance.

mod case_i;
mod case_ii;
mod pattern;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::lienard::{
    certify, derive_system, invariance_check, CertificationReport, HyperellipticCurve,
    LienardError, LienardSystem,
};
use crate::polyx::{rat, Poly, Rational};

pub use case_i::{construct_case_i, construct_case_i_with, default_case_i_pattern};
pub use case_ii::{construct_case_ii, perturb_lemma7, perturb_lemma8};
pub use pattern::{RootPattern, RootSlot};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search exhausted in stage {stage}: {detail}")]
    SearchExhausted { stage: String, detail: String },
    #[error("root pattern not achieved: {0}")]
    PatternNotAchieved(String),
    #[error(transparent)]
    Lienard(#[from] LienardError),
    #[error("constructed curve failed a final check: {0}")]
    Defect(String),
}

fn exhausted(stage: &str, detail: impl Into<String>) -> FamilyError {
    FamilyError::SearchExhausted {
        stage: stage.to_string(),
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    #[serde(rename = "case-iii")]
    HighN,
    #[serde(rename = "n-2m")]
    NTwoM,
    #[serde(rename = "case-i")]
    CaseI,
    #[serde(rename = "case-ii-i")]
    CaseIiI,
    #[serde(rename = "case-ii-ii")]
    CaseIiIi,
    #[serde(rename = "case-ii-iii")]
    CaseIiIii,
    #[serde(rename = "lift")]
    Lift,
}

/// A searched parameter: a number or a polynomial such as `c(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Value(#[serde(with = "crate::polyx::serde_rat")] Rational),
    Poly(Poly),
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    /// Cycle count advertised by the family for `(m, n)`.
    pub target: usize,
    pub curve: HyperellipticCurve,
    pub system: LienardSystem,
    pub report: CertificationReport,
    pub parameters: BTreeMap<String, Param>,
}

/// Search limits shared by all constructions.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Largest `s` tried by the doubling searches.
    pub s_cap: BigInt,
    /// Number of halvings tried for small parameters.
    pub max_halvings: u32,
    /// Rounds of coefficient jitter when the critical-point condition fails.
    pub jitter_rounds: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            s_cap: BigInt::one() << 60,
            max_halvings: 48,
            jitter_rounds: 64,
            seed: 0x5eed,
        }
    }
}

/// `2^-k`.
pub(crate) fn half_pow(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

pub(crate) fn prod_linear(roots: impl IntoIterator<Item = i64>) -> Poly {
    roots
        .into_iter()
        .fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(&rat(r)))
}

/// Builds `(P, Q)` from `Q1` and `P1 = Q1 + c`: with `P1 = lc * prod f_k^k`
/// (Yun), `W = lc * prod_{k odd} f_k` and `R = squarefree_part(Q1)`,
/// `P = lc * R * prod f_k^ceil(k/2)` and `Q = R^2 W Q1`, so that
/// `P^2 = R^2 W P1` and `P^2 - Q = R^2 W c`.
pub fn assemble(q1: &Poly, p1: &Poly) -> HyperellipticCurve {
    let root = q1.squarefree_part();
    let lc = p1.leading_coeff();
    let mut half = Poly::constant(lc.clone());
    let mut w = Poly::constant(lc);
    for (f, k) in p1.squarefree_decomposition() {
        half = &half * &f.pow(k.div_ceil(2));
        if k % 2 == 1 {
            w = &w * &f;
        }
    }
    let p = &root * &half;
    let q = &(&(&root * &root) * &w) * q1;
    HyperellipticCurve::new(p, q)
}

/// Derives and certifies a candidate; `None` unless its type is `(m, n)`
/// and `accept` holds for the certified count.
pub(crate) fn evaluate(
    curve: &HyperellipticCurve,
    m: usize,
    n: usize,
    accept: impl Fn(usize) -> bool,
) -> Option<(LienardSystem, CertificationReport)> {
    let sys = derive_system(curve).ok()?;
    if sys.degrees() != (m, n) {
        return None;
    }
    let report = certify(curve).ok()?;
    accept(report.certified_count).then_some((sys, report))
}

pub(crate) fn finish(
    family: Family,
    target: usize,
    curve: HyperellipticCurve,
    (system, report): (LienardSystem, CertificationReport),
    parameters: BTreeMap<String, Param>,
) -> Result<ConstructionResult, FamilyError> {
    if !invariance_check(&system, &curve) {
        return Err(FamilyError::Defect("invariance residual is nonzero".into()));
    }
    if !report.within_bounds {
        return Err(FamilyError::Defect(format!(
            "{} certified cycles exceed the bound for ({}, {})",
            report.certified_count, report.m, report.n
        )));
    }
    Ok(ConstructionResult {
        family,
        m: report.m,
        n: report.n,
        target,
        curve,
        system,
        report,
        parameters,
    })
}

fn doubling(start: BigInt, cap: &BigInt) -> impl Iterator<Item = Rational> + '_ {
    std::iter::successors(Some(start), |s| Some(s * 2))
        .take_while(move |s| s <= cap)
        .map(Rational::from_integer)
}

/// `P = prod_{i=1}^m (x - i) (x + s)`,
/// `Q = -s prod_{i=1}^m (x - i) (x + s)^(n-m+1)`, for `n >= 2m + 1`;
/// `floor(m/2)` cycles.
pub fn construct_high_n(
    m: usize,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    if m < 2 || n < 2 * m + 1 {
        return Err(FamilyError::Precondition(format!(
            "case (iii) needs m >= 2 and n >= 2m + 1, got ({m}, {n})"
        )));
    }
    let target = m / 2;
    let base = prod_linear(1..=m as i64);
    for s in doubling(BigInt::from(m + 1), &cfg.s_cap) {
        let shift = Poly::new(vec![s.clone(), Rational::one()]);
        let p = &base * &shift;
        let q = (&base * &shift.pow(n - m + 1)).scale(&-s.clone());
        let curve = HyperellipticCurve::new(p, q);
        if let Some(found) = evaluate(&curve, m, n, |c| c == target) {
            let params = BTreeMap::from([("s".to_string(), Param::Value(s))]);
            return finish(Family::HighN, target, curve, found, params);
        }
    }
    Err(exhausted(
        "s",
        format!("no s up to the cap certifies {target} cycles"),
    ))
}

/// `P = prod_{i=1}^m (x - i) (x + s)`, `Q = prod_{i=1}^m (x - i) (x + s)^(m+2)`;
/// `floor((2m-1)/4)` cycles.
pub fn construct_n_2m(m: usize, cfg: &SearchConfig) -> Result<ConstructionResult, FamilyError> {
    if m < 3 {
        return Err(FamilyError::Precondition(format!(
            "the n = 2m family needs m >= 3, got {m}"
        )));
    }
    let n = 2 * m;
    let target = (2 * m - 1) / 4;
    let base = prod_linear(1..=m as i64);
    for s in doubling(BigInt::from(m + 1), &cfg.s_cap) {
        let shift = Poly::new(vec![s.clone(), Rational::one()]);
        let p = &base * &shift;
        let q = &base * &shift.pow(m + 2);
        let curve = HyperellipticCurve::new(p, q);
        if let Some(found) = evaluate(&curve, m, n, |c| c == target) {
            let params = BTreeMap::from([("s".to_string(), Param::Value(s))]);
            return finish(Family::NTwoM, target, curve, found, params);
        }
    }
    Err(exhausted(
        "s",
        format!("no s up to the cap certifies {target} cycles"),
    ))
}

/// `P -> P (x - s)`, `Q -> Q (x - s)^2`: type `(m, n)` becomes `(m+1, n+2)`
/// and no certified cycle is lost once `s` is large. With `s = None` the
/// value is searched by doubling from above every root of `Q`.
pub fn lift(
    curve: &HyperellipticCurve,
    s: Option<Rational>,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    let sys = derive_system(curve)?;
    let (m, n) = sys.degrees();
    let t = certify(curve)?.certified_count;
    if t == 0 {
        return Err(FamilyError::Precondition(
            "lift needs a curve with at least one certified cycle".into(),
        ));
    }
    let candidates: Vec<Rational> = match s {
        Some(s) => vec![s],
        None => {
            let start = curve.q.cauchy_bound().ceil().to_integer() + 1;
            doubling(start, &cfg.s_cap).collect()
        }
    };
    for s in candidates {
        let lin = Poly::linear_root(&s);
        let lifted = HyperellipticCurve::new(&curve.p * &lin, &curve.q * &lin.pow(2));
        if let Some(found) = evaluate(&lifted, m + 1, n + 2, |c| c >= t) {
            let params = BTreeMap::from([("s".to_string(), Param::Value(s))]);
            return finish(Family::Lift, t, lifted, found, params);
        }
    }
    Err(exhausted(
        "lift",
        format!("no s keeps {t} certified cycles"),
    ))
}

/// `floor((4m + 2) / 3)`, the last `n` of case (i).
pub fn knee(m: usize) -> usize {
    (4 * m + 2) / 3
}

/// Picks the family for `(m, n)` and runs it.
pub fn construct(
    m: usize,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ConstructionResult, FamilyError> {
    if m < 2 || n < m + 2 {
        return Err(FamilyError::Precondition(format!(
            "no construction for ({m}, {n}): hyperelliptic limit cycles need m >= 2 and n >= m + 2"
        )));
    }
    if n >= 2 * m + 1 {
        construct_high_n(m, n, cfg)
    } else if n == 2 * m {
        construct_n_2m(m, cfg)
    } else if n <= knee(m) {
        construct_case_i(m, n, cfg)
    } else {
        construct_case_ii(m, n, cfg)
    }
}

/// `gamma` and `phi(gamma)` for an approximate minimizer of `phi` on
/// `[lo, hi]`: the endpoints and the critical points refined to `2^-40`.
pub(crate) fn approx_min(phi: &Poly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut best = (lo.clone(), phi.eval(lo));
    let mut consider = |x: Rational| {
        let v = phi.eval(&x);
        if v < best.1 {
            best = (x, v);
        }
    };
    consider(hi.clone());
    let dphi = phi.derivative();
    if !dphi.is_zero() {
        let width = half_pow(40);
        for mut r in crate::rootclass::isolate_real_roots(&dphi) {
            r.refine(&width);
            let x = r.midpoint();
            if &x > lo && &x < hi {
                consider(x);
            }
        }
    }
    best
}

/// True iff `f` is squarefree, no break point is a root, the open gaps
/// between consecutive break points hold exactly `counts` roots and there
/// are no other real roots.
pub(crate) fn ladder_ok(f: &Poly, breaks: &[Rational], counts: &[usize]) -> bool {
    debug_assert_eq!(breaks.len(), counts.len() + 1);
    let Some(deg) = f.degree() else { return false };
    if counts.iter().sum::<usize>() != deg {
        return false;
    }
    if !Poly::gcd(f, &f.derivative()).is_constant() {
        return false;
    }
    if breaks.iter().any(|b| f.eval(b).is_zero()) {
        return false;
    }
    breaks
        .windows(2)
        .zip(counts)
        .all(|(w, &k)| crate::rootclass::count_open(f, &w[0], &w[1]) == k)
}
