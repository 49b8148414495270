//! Recovery of the hyperelliptic invariant curve of a Liénard system.
//!
//! Writing `P = sum p_i x^i` (degree `m+1`) and `Q = sum q_j x^j` with
//! unknown coefficients, invariance is equivalent to the two polynomial
//! identities
//!
//! ```text
//! (f)  2Q f = 2Q P' + P Q'
//! (g)  2Q g = Q' (P^2 - Q)
//! ```
//!
//! together with `deg(P^2 - Q) = n + 1`, which for `n < 2m + 1` pins the
//! top coefficients of `Q` to those of `P^2`. Matching coefficients
//! from the top degree downward determines the unknowns one at a time; the
//! solver below runs that elimination explicitly, branching whenever a
//! single-unknown equation is not linear, and accepts a candidate only
//! after the identities are re-expanded exactly.

mod mpoly;

use num_traits::Zero;
use serde::Serialize;

use crate::lienard::{HyperellipticCurve, LienardSystem};
use crate::polyx::{rat_to_string, Poly, Rational};
use crate::rootclass::isolate_real_roots;

pub use mpoly::{MPoly, XPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecoverError {
    #[error("type ({m}, {n}) has n = 2m + 1; the invariant curve need not be unique")]
    UndeterminedType { m: usize, n: usize },
    #[error("degenerate pivot: {0}")]
    DegenerateLeadingCoefficient(String),
    #[error("system is not a Liénard system of type (m, n) with n >= 1: {0}")]
    InvalidSystem(String),
    #[error("{0} distinct curves satisfy the identities")]
    MultipleCurves(usize),
}

/// Which of the two identities a coefficient equation comes from: the one
/// carrying `f` or the one carrying `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    F,
    G,
}

/// One coefficient equation: `identity` at the power `x^degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquationLabel {
    pub identity: Identity,
    pub degree: usize,
}

impl std::fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.identity {
            Identity::F => "f",
            Identity::G => "g",
        };
        write!(f, "{name}[x^{}]", self.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// A single linear equation in one unknown.
    Linear,
    /// A nonlinear equation in one unknown; one rational root taken.
    Branch,
    /// A row of the reduced linear subsystem.
    LinearSystem,
}

/// One entry of the elimination schedule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub equation: Option<EquationLabel>,
    pub unknown: String,
    #[serde(with = "crate::polyx::serde_rat")]
    pub pivot: Rational,
    #[serde(with = "crate::polyx::serde_rat")]
    pub value: Rational,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum RecoveryOutcome {
    Curve {
        curve: HyperellipticCurve,
        exact_match: bool,
        schedule: Vec<Step>,
        branches: usize,
    },
    NoCurve {
        witness: EquationLabel,
        branches: usize,
    },
}

impl RecoveryOutcome {
    pub fn curve(&self) -> Option<&HyperellipticCurve> {
        match self {
            RecoveryOutcome::Curve { curve, .. } => Some(curve),
            RecoveryOutcome::NoCurve { .. } => None,
        }
    }
}

/// Unknown layout: `p_0..=p_{m+1}` then `q_0..=q_{top}`.
struct Layout {
    m: usize,
    n: usize,
    q_top: usize,
}

impl Layout {
    fn p(&self, i: usize) -> usize {
        i
    }

    fn q(&self, j: usize) -> usize {
        self.m + 2 + j
    }

    fn count(&self) -> usize {
        self.m + 2 + self.q_top + 1
    }

    /// `q_j` is pinned to the matching coefficient of `P^2` when `j >= n + 2` (only for `n < 2m+1`).
    fn q_pinned(&self, j: usize) -> bool {
        self.n < 2 * self.m + 1 && j >= self.n + 2
    }

    fn name(&self, v: usize) -> String {
        if v < self.m + 2 {
            format!("p_{v}")
        } else {
            format!("q_{}", v - self.m - 2)
        }
    }

    fn leading(&self) -> [usize; 2] {
        [self.p(self.m + 1), self.q(self.q_top)]
    }
}

#[derive(Clone)]
struct Branch {
    eqs: Vec<(EquationLabel, MPoly)>,
    values: Vec<Option<Rational>>,
    schedule: Vec<Step>,
}

enum BranchEnd {
    Solved(Branch),
    Dead(EquationLabel),
    Forked(Vec<Branch>),
    Stalled(Vec<usize>),
}

impl Branch {
    fn assign(&mut self, v: usize, value: Rational, step: Step) {
        for (_, e) in self.eqs.iter_mut() {
            *e = e.assign(v, &value);
        }
        self.values[v] = Some(value);
        self.schedule.push(step);
    }

    /// Drops satisfied equations; reports the first violated one.
    fn prune(&mut self) -> Option<EquationLabel> {
        let mut dead = None;
        self.eqs.retain(|(label, e)| match e.as_constant() {
            Some(c) if c.is_zero() => false,
            Some(_) => {
                dead.get_or_insert(*label);
                true
            }
            None => true,
        });
        dead
    }
}

fn run_branch(mut b: Branch, layout: &Layout) -> BranchEnd {
    loop {
        if let Some(label) = b.prune() {
            return BranchEnd::Dead(label);
        }
        if b.values.iter().all(Option::is_some) {
            return BranchEnd::Solved(b);
        }
        // Linear single-unknown equations first, in schedule order.
        let single = b.eqs.iter().find_map(|(label, e)| {
            let vs = e.variables();
            (vs.len() == 1 && e.total_degree() == 1).then(|| (*label, vs[0], e.clone()))
        });
        if let Some((label, v, e)) = single {
            let u = e.as_univariate(v).expect("one variable");
            let pivot = u.coeff(1);
            let value = -u.coeff(0) / &pivot;
            let step = Step {
                kind: StepKind::Linear,
                equation: Some(label),
                unknown: layout.name(v),
                pivot,
                value: value.clone(),
            };
            b.assign(v, value, step);
            continue;
        }
        if let Some(forks) = linear_subsystem(&mut b, layout) {
            match forks {
                Ok(true) => continue,
                Ok(false) => {}
                Err(label) => return BranchEnd::Dead(label),
            }
        }
        let nonlinear = b.eqs.iter().find_map(|(label, e)| {
            let vs = e.variables();
            (vs.len() == 1).then(|| (*label, vs[0], e.clone()))
        });
        if let Some((label, v, e)) = nonlinear {
            let u = e.as_univariate(v).expect("one variable");
            let roots: Vec<Rational> = isolate_real_roots(&u)
                .into_iter()
                .filter_map(|r| r.value().cloned())
                .filter(|r| !(r.is_zero() && layout.leading().contains(&v)))
                .collect();
            if roots.is_empty() {
                return BranchEnd::Dead(label);
            }
            let pivot = u.leading_coeff();
            let forks = roots
                .into_iter()
                .map(|r| {
                    let mut child = b.clone();
                    let step = Step {
                        kind: StepKind::Branch,
                        equation: Some(label),
                        unknown: layout.name(v),
                        pivot: pivot.clone(),
                        value: r.clone(),
                    };
                    child.assign(v, r, step);
                    child
                })
                .collect();
            return BranchEnd::Forked(forks);
        }
        let free = (0..layout.count())
            .filter(|&v| b.values[v].is_none())
            .collect();
        return BranchEnd::Stalled(free);
    }
}

/// Row-reduces every equation of total degree one and assigns each unknown
/// isolated by a row. `Ok(progress)`, or `Err` on an inconsistent row.
fn linear_subsystem(b: &mut Branch, layout: &Layout) -> Option<Result<bool, EquationLabel>> {
    let rows: Vec<(EquationLabel, Vec<(usize, Rational)>, Rational)> = b
        .eqs
        .iter()
        .filter_map(|(label, e)| e.as_linear().map(|(lin, c)| (*label, lin, c)))
        .collect();
    if rows.is_empty() {
        return None;
    }
    let mut vars: Vec<usize> = rows
        .iter()
        .flat_map(|(_, l, _)| l.iter().map(|(v, _)| *v))
        .collect();
    vars.sort_unstable();
    vars.dedup();
    let col = |v: usize| vars.binary_search(&v).expect("collected");
    let width = vars.len();
    let mut mat: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(_, lin, c)| {
            let mut row = vec![Rational::zero(); width + 1];
            for (v, a) in lin {
                row[col(*v)] = a.clone();
            }
            row[width] = -c.clone();
            row
        })
        .collect();
    let labels: Vec<EquationLabel> = rows.iter().map(|(l, _, _)| *l).collect();
    let mut origin: Vec<usize> = (0..mat.len()).collect();
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..mat.len()).find(|&r| !mat[r][c].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        origin.swap(rank, p);
        let inv = mat[rank][c].clone().recip();
        for x in mat[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..mat.len() {
            if r != rank && !mat[r][c].is_zero() {
                let factor = mat[r][c].clone();
                for k in c..=width {
                    let d = &factor * &mat[rank][k];
                    mat[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    for r in rank..mat.len() {
        if !mat[r][width].is_zero() {
            return Some(Err(labels[origin[r]]));
        }
    }
    let mut progress = false;
    for row in mat.iter().take(rank) {
        let nz: Vec<usize> = (0..width).filter(|&c| !row[c].is_zero()).collect();
        if let [c] = nz[..] {
            let value = &row[width] / &row[c];
            let step = Step {
                kind: StepKind::LinearSystem,
                equation: None,
                unknown: layout.name(vars[c]),
                pivot: row[c].clone(),
                value: value.clone(),
            };
            b.assign(vars[c], value, step);
            progress = true;
        }
    }
    Some(Ok(progress))
}

/// `2Q f - 2Q P' - P Q'` and `2Q g - Q'(P^2 - Q)`.
fn residuals(sys: &LienardSystem, curve: &HyperellipticCurve) -> (Poly, Poly) {
    let (p, q) = (&curve.p, &curve.q);
    let two = crate::polyx::rat(2);
    let dq = q.derivative();
    let two_q = q.scale(&two);
    let rf = &(&(&two_q * &sys.f) - &(&two_q * &p.derivative())) - &(p * &dq);
    let rg = &(&two_q * &sys.g) - &(&dq * &(&(p * p) - q));
    (rf, rg)
}

/// The first (highest-degree) violated coefficient, if any.
pub fn identity_witness(sys: &LienardSystem, curve: &HyperellipticCurve) -> Option<EquationLabel> {
    let (rf, rg) = residuals(sys, curve);
    let wf = rf.degree().map(|d| EquationLabel {
        identity: Identity::F,
        degree: d,
    });
    let wg = rg.degree().map(|d| EquationLabel {
        identity: Identity::G,
        degree: d,
    });
    match (wf, wg) {
        (Some(a), Some(b)) => Some(if b.degree > a.degree { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Recovers the unique hyperelliptic invariant curve of `sys`, or shows
/// there is none.
pub fn recover_curve(sys: &LienardSystem) -> Result<RecoveryOutcome, RecoverError> {
    let (f, g) = (&sys.f, &sys.g);
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(RecoverError::InvalidSystem(
            "f and g must be nonzero".into(),
        ));
    };
    if n == 0 {
        return Err(RecoverError::InvalidSystem(
            "g must have degree at least 1".into(),
        ));
    }
    if n == 2 * m + 1 {
        return Err(RecoverError::UndeterminedType { m, n });
    }
    let q_top = if n > 2 * m + 1 { n + 1 } else { 2 * m + 2 };
    let layout = Layout { m, n, q_top };

    let p_x = XPoly::generic((0..=m + 1).map(|i| layout.p(i)));
    let p_sq = p_x.mul(&p_x);
    let q_x = XPoly(
        (0..=q_top)
            .map(|j| {
                if layout.q_pinned(j) {
                    p_sq.coeff(j)
                } else {
                    MPoly::var(layout.q(j))
                }
            })
            .collect(),
    );
    let two = crate::polyx::rat(2);
    let two_q = q_x.scale(&two);
    let dq = q_x.derivative();
    let ef = two_q
        .mul(&XPoly::from_poly(f))
        .sub(&two_q.mul(&p_x.derivative()))
        .sub(&p_x.mul(&dq));
    let eg = two_q
        .mul(&XPoly::from_poly(g))
        .sub(&dq.mul(&p_sq.sub(&q_x)));

    let mut eqs: Vec<(EquationLabel, MPoly)> = Vec::new();
    let top = ef.0.len().max(eg.0.len());
    for d in (0..top).rev() {
        eqs.push((
            EquationLabel {
                identity: Identity::G,
                degree: d,
            },
            eg.coeff(d),
        ));
        eqs.push((
            EquationLabel {
                identity: Identity::F,
                degree: d,
            },
            ef.coeff(d),
        ));
    }
    let mut values = vec![None; layout.count()];
    for j in 0..=q_top {
        if layout.q_pinned(j) {
            // Not a free unknown; filled in from P after the solve.
            values[layout.q(j)] = Some(Rational::zero());
        }
    }
    let root = Branch {
        eqs,
        values,
        schedule: Vec::new(),
    };

    let mut stack = vec![root];
    let mut branches = 1;
    let mut solved = Vec::new();
    let mut first_dead = None;
    let mut stalled = None;
    while let Some(b) = stack.pop() {
        match run_branch(b, &layout) {
            BranchEnd::Solved(b) => solved.push(b),
            BranchEnd::Dead(label) => {
                first_dead.get_or_insert(label);
            }
            BranchEnd::Forked(children) => {
                branches += children.len() - 1;
                stack.extend(children.into_iter().rev());
            }
            BranchEnd::Stalled(free) => {
                stalled.get_or_insert(free);
            }
        }
    }

    let mut curves: Vec<(HyperellipticCurve, Vec<Step>)> = Vec::new();
    for b in solved {
        let value = |v: usize| b.values[v].clone().expect("solved");
        let p = Poly::new((0..=m + 1).map(|i| value(layout.p(i))).collect());
        let p2 = &p * &p;
        let q = Poly::new(
            (0..=q_top)
                .map(|j| {
                    if layout.q_pinned(j) {
                        p2.coeff(j)
                    } else {
                        value(layout.q(j))
                    }
                })
                .collect(),
        );
        let curve = HyperellipticCurve::new(p, q);
        match identity_witness(sys, &curve) {
            None if !curve.q.is_zero() => {
                if !curves.iter().any(|(c, _)| c == &curve) {
                    curves.push((curve, b.schedule));
                }
            }
            None => {}
            Some(w) => {
                first_dead.get_or_insert(w);
            }
        }
    }
    match curves.len() {
        0 => {
            if let (Some(free), None) = (&stalled, &first_dead) {
                let names: Vec<String> = free.iter().map(|&v| layout.name(v)).collect();
                return Err(RecoverError::DegenerateLeadingCoefficient(format!(
                    "elimination cannot determine {}",
                    names.join(", ")
                )));
            }
            if let Some(free) = &stalled {
                let names: Vec<String> = free.iter().map(|&v| layout.name(v)).collect();
                return Err(RecoverError::DegenerateLeadingCoefficient(format!(
                    "a branch leaves {} undetermined",
                    names.join(", ")
                )));
            }
            Ok(RecoveryOutcome::NoCurve {
                witness: first_dead.expect("every branch ends"),
                branches,
            })
        }
        1 => {
            let (curve, schedule) = curves.pop().expect("one curve");
            Ok(RecoveryOutcome::Curve {
                curve,
                exact_match: true,
                schedule,
                branches,
            })
        }
        k => Err(RecoverError::MultipleCurves(k)),
    }
}

/// Renders the schedule as `unknown <- value via label (pivot)` lines.
pub fn describe_schedule(schedule: &[Step]) -> Vec<String> {
    schedule
        .iter()
        .map(|s| {
            let via = s
                .equation
                .map(|l| l.to_string())
                .unwrap_or_else(|| "linear subsystem".into());
            format!(
                "{} = {} via {} (pivot {})",
                s.unknown,
                rat_to_string(&s.value),
                via,
                rat_to_string(&s.pivot)
            )
        })
        .collect()
}
