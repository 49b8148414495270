//! Sparse multivariate polynomials over the rationals, just enough to carry
//! the coefficient equations of the recovery solve.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::polyx::{Poly, Rational};

/// A monomial as sorted `(variable, exponent)` pairs with nonzero exponents.
pub type Monomial = Vec<(usize, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut p = MPoly::zero();
        p.add_term(vec![(v, 1)], Rational::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when no variable occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flatten().map(|&(v, _)| v).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Replaces variable `v` by the polynomial `value`.
    pub fn substitute(&self, v: usize, value: &MPoly) -> MPoly {
        if !self.terms.keys().any(|m| m.iter().any(|&(w, _)| w == v)) {
            return self.clone();
        }
        let mut out = MPoly::zero();
        let mut powers: Vec<MPoly> = vec![MPoly::constant(Rational::one())];
        for (m, c) in &self.terms {
            let mut rest = Vec::with_capacity(m.len());
            let mut e = 0u32;
            for &(w, k) in m {
                if w == v {
                    e = k;
                } else {
                    rest.push((w, k));
                }
            }
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            for (pm, pc) in &powers[e as usize].terms {
                out.add_term(mono_mul(&rest, pm), c * pc);
            }
        }
        out
    }

    pub fn assign(&self, v: usize, value: &Rational) -> MPoly {
        self.substitute(v, &MPoly::constant(value.clone()))
    }

    /// As a univariate polynomial in `v`, when `v` is the only variable.
    pub fn as_univariate(&self, v: usize) -> Option<Poly> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let e = match m.as_slice() {
                [] => 0,
                [(w, e)] if *w == v => *e as usize,
                _ => return None,
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += c;
        }
        Some(Poly::new(coeffs))
    }

    /// `(coefficients per variable, constant)` when the total degree is at
    /// most one.
    pub fn as_linear(&self) -> Option<(Vec<(usize, Rational)>, Rational)> {
        let mut lin = Vec::new();
        let mut constant = Rational::zero();
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => constant = c.clone(),
                [(v, 1)] => lin.push((*v, c.clone())),
                _ => return None,
            }
        }
        Some((lin, constant))
    }
}

/// Polynomials in `x` whose coefficients are `MPoly`s.
#[derive(Debug, Clone, Default)]
pub struct XPoly(pub Vec<MPoly>);

impl XPoly {
    pub fn from_poly(p: &Poly) -> Self {
        XPoly(
            p.coeffs()
                .iter()
                .map(|c| MPoly::constant(c.clone()))
                .collect(),
        )
    }

    /// `sum_i vars[i] x^i`.
    pub fn generic(vars: impl IntoIterator<Item = usize>) -> Self {
        XPoly(vars.into_iter().map(MPoly::var).collect())
    }

    pub fn coeff(&self, i: usize) -> MPoly {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let n = self.0.len().max(o.0.len());
        XPoly((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn scale(&self, c: &Rational) -> XPoly {
        XPoly(self.0.iter().map(|m| m.scale(c)).collect())
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        self.add(&o.scale(&(-Rational::one())))
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return XPoly::default();
        }
        let mut out = vec![MPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul(b);
                out[i + j].add_assign(&prod);
            }
        }
        XPoly(out)
    }

    pub fn derivative(&self) -> XPoly {
        XPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
                .collect(),
        )
    }
}
