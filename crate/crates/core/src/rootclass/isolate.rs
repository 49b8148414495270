use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;

use super::sturm::{count_closed, count_open, SturmChain};
use crate::polyx::{rat, rat_to_string, Poly, Rational};

/// A real root pinned either exactly (`lo == hi`) or inside the open
/// interval `(lo, hi)`, together with the squarefree factor it is a simple
/// root of. Endpoints of a non-exact interval are never roots of `factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
    factor: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignVerdict {
    Positive,
    Negative,
    MixedOrZero,
}

impl serde::Serialize for IsolatingInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IsolatingInterval", 4)?;
        st.serialize_field("lo", &rat_to_string(&self.lo))?;
        st.serialize_field("hi", &rat_to_string(&self.hi))?;
        st.serialize_field("exact", &self.is_exact())?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.end()
    }
}

impl IsolatingInterval {
    pub fn exact(r: Rational, multiplicity: usize) -> Self {
        IsolatingInterval {
            lo: r.clone(),
            hi: r.clone(),
            multiplicity,
            factor: Poly::linear_root(&r),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value, when the root is rational and has been pinned.
    pub fn value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn factor(&self) -> &Poly {
        &self.factor
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    /// One bisection step; may pin the root exactly.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let sm = self.factor.sign_at(&mid);
        if sm == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if sm == self.factor.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Shrinks the interval below `width` (exact roots are already there).
    pub fn refine(&mut self, width: &Rational) {
        while !self.is_exact() && &self.width() >= width {
            self.bisect();
        }
    }

    /// Sign of `h` at the root.
    pub fn sign_of(&mut self, h: &Poly) -> i8 {
        if let Some(v) = self.value() {
            return h.sign_at(v);
        }
        if h.is_zero() {
            return 0;
        }
        let g = Poly::gcd(h, &self.factor);
        if !g.is_constant() && count_open(&g, &self.lo, &self.hi) > 0 {
            return 0;
        }
        while count_closed(h, &self.lo, &self.hi) > 0 {
            self.bisect();
            if let Some(v) = self.value() {
                return h.sign_at(v);
            }
        }
        h.sign_at(&self.midpoint())
    }

    /// Shrinks until no root of `h` other than possibly this root lies in
    /// the closed interval.
    fn clear_of(&mut self, h: &Poly) {
        if self.is_exact() || h.is_zero() {
            return;
        }
        let own = usize::from(self.clone().sign_of(h) == 0);
        while count_closed(h, &self.lo, &self.hi) > own {
            self.bisect();
            if self.is_exact() {
                return;
            }
        }
    }

    /// Orders two isolated roots, refining both as needed.
    pub fn compare(&mut self, other: &mut IsolatingInterval) -> Ordering {
        loop {
            if self.is_exact() && other.is_exact() {
                return self.lo.cmp(&other.lo);
            }
            if self.hi < other.lo {
                return Ordering::Less;
            }
            if other.hi < self.lo {
                return Ordering::Greater;
            }
            if let Some(v) = self.value() {
                if other.factor.eval(v).is_zero() {
                    return Ordering::Equal;
                }
            } else if let Some(v) = other.value() {
                if self.factor.eval(v).is_zero() {
                    return Ordering::Equal;
                }
            } else {
                let g = Poly::gcd(&self.factor, &other.factor);
                let lo = (&self.lo).max(&other.lo).clone();
                let hi = (&self.hi).min(&other.hi).clone();
                if !g.is_constant() && lo < hi && count_open(&g, &lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
            self.bisect();
            other.bisect();
        }
    }
}

fn is_strictly_before(a: &IsolatingInterval, b: &IsolatingInterval) -> bool {
    a.hi < b.lo || (a.is_exact() && b.is_exact() && a.lo < b.lo)
}

/// Distinct real roots of the squarefree, nonconstant `g`.
fn isolate_squarefree(g: &Poly, multiplicity: usize) -> Vec<IsolatingInterval> {
    let g = g.primitive_part();
    let chain = SturmChain::new(&g);
    let b = g.cauchy_bound() + rat(1);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.variations_at(&lo) - chain.variations_at(&hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(IsolatingInterval {
                lo,
                hi,
                multiplicity,
                factor: g.clone(),
            });
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        if g.eval(&mid).is_zero() {
            let mut d = (&hi - &lo) / rat(4);
            loop {
                let (l, r) = (&mid - &d, &mid + &d);
                if !g.eval(&l).is_zero()
                    && !g.eval(&r).is_zero()
                    && chain.variations_at(&l) - chain.variations_at(&r) == 1
                {
                    stack.push((lo, l));
                    stack.push((r, hi));
                    break;
                }
                d /= rat(2);
            }
            out.push(IsolatingInterval {
                lo: mid.clone(),
                hi: mid,
                multiplicity,
                factor: g.clone(),
            });
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    // A rational root r of an integer polynomial with leading coefficient
    // a satisfies a*r in Z, so a window narrower than 1/a holds at most one
    // candidate.
    let lc = g.leading_coeff().abs();
    let step = lc.recip();
    for iv in out.iter_mut() {
        iv.refine(&step);
        if iv.is_exact() {
            continue;
        }
        let k_lo: BigInt = (&iv.lo * &lc).ceil().to_integer();
        let k_hi: BigInt = (&iv.hi * &lc).floor().to_integer();
        let mut k = k_lo;
        while k <= k_hi {
            let cand = Rational::new(k.clone(), lc.to_integer());
            if g.eval(&cand).is_zero() {
                iv.lo = cand.clone();
                iv.hi = cand;
                break;
            }
            k += 1;
        }
    }
    for iv in out.iter_mut() {
        if iv.is_exact() {
            iv.factor = Poly::linear_root(&iv.lo);
        }
    }
    out
}

/// Isolates every distinct real root of `f`, sorted and pairwise strictly
/// separated, each tagged with its multiplicity in `f`.
pub fn isolate_real_roots(f: &Poly) -> Vec<IsolatingInterval> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut all: Vec<IsolatingInterval> = f
        .squarefree_decomposition()
        .into_iter()
        .filter(|(p, _)| !p.is_constant())
        .flat_map(|(p, k)| isolate_squarefree(&p, k))
        .collect();
    loop {
        let mut clash = None;
        'scan: for i in 0..all.len() {
            for j in 0..all.len() {
                if i != j
                    && !is_strictly_before(&all[i], &all[j])
                    && !is_strictly_before(&all[j], &all[i])
                {
                    clash = Some((i, j));
                    break 'scan;
                }
            }
        }
        match clash {
            Some((i, j)) => {
                all[i].bisect();
                all[j].bisect();
            }
            None => break,
        }
    }
    all.sort_by(|a, b| a.lo.cmp(&b.lo));
    all
}

/// Number of distinct roots of `h` strictly between the roots held by `a`
/// and `b` (`a` below `b`). Both intervals may be refined.
pub fn roots_between(h: &Poly, a: &mut IsolatingInterval, b: &mut IsolatingInterval) -> usize {
    assert!(!h.is_zero(), "roots_between on the zero polynomial");
    a.clear_of(h);
    b.clear_of(h);
    while !is_strictly_before(a, b) {
        a.bisect();
        b.bisect();
        a.clear_of(h);
        b.clear_of(h);
    }
    count_open(h, &a.hi, &b.lo)
}

/// Sign of `h` on the open interval between the roots held by `a` and `b`.
pub fn sign_between(h: &Poly, a: &mut IsolatingInterval, b: &mut IsolatingInterval) -> SignVerdict {
    if h.is_zero() || roots_between(h, a, b) > 0 {
        return SignVerdict::MixedOrZero;
    }
    let probe = (&a.hi + &b.lo) / rat(2);
    verdict(h.sign_at(&probe))
}

fn verdict(s: i8) -> SignVerdict {
    match s {
        1 => SignVerdict::Positive,
        -1 => SignVerdict::Negative,
        _ => SignVerdict::MixedOrZero,
    }
}

/// Strict sign of `f` on the open interval `(lo, hi)`.
pub fn sign_on_interval(f: &Poly, lo: &Rational, hi: &Rational) -> SignVerdict {
    if f.is_zero() || lo >= hi || count_open(f, lo, hi) > 0 {
        return SignVerdict::MixedOrZero;
    }
    verdict(f.sign_at(&((lo + hi) / rat(2))))
}

/// Roots of `h` lying strictly between the roots held by `a` and `b`.
pub fn isolate_between(
    h: &Poly,
    a: &mut IsolatingInterval,
    b: &mut IsolatingInterval,
) -> Vec<IsolatingInterval> {
    let mut out = Vec::new();
    for mut r in isolate_real_roots(h) {
        if r.compare(a) == Ordering::Greater && r.compare(b) == Ordering::Less {
            out.push(r);
        }
    }
    out
}
