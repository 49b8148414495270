//! Exact univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored densely in ascending degree order: `coeffs[i]`
//! is the coefficient of `x^i`. The zero polynomial is the empty vector, so
//! every stored polynomial has a nonzero leading coefficient.

mod bivariate;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use bivariate::BivariatePoly;
pub use parse::{parse_poly, parse_rational, ParseError};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Errors raised by polynomial division.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Creates a polynomial from ascending coefficients, dropping trailing
    /// zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// The linear factor `x - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Poly::new(vec![-a.clone(), Rational::one()])
    }

    /// Product of `(x - r)^k` over the given roots.
    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = (&'a Rational, usize)>,
    {
        roots.into_iter().fold(Poly::one(), |acc, (r, k)| {
            &acc * &Poly::linear_root(r).pow(k)
        })
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// Positive rational content: `self = content * primitive` where the
    /// primitive part has coprime integer coefficients and the same sign
    /// pattern as `self`.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * (&den / c.denom());
            num = num.gcd(&scaled);
        }
        Rational::new(num, den)
    }

    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.content().recip())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of `self(x)`.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    /// Floating-point evaluation, for rendering only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let cs = self.to_f64_coeffs();
        cs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly), PolyError> {
        let bd = b.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(ad) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if ad < bd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = b.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); ad - bd + 1];
        for k in (0..=ad - bd).rev() {
            let c = &rem[k + bd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = &c * bc;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        rem.truncate(bd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(b).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divrem(b)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is the zero polynomial.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut a = a.primitive_part();
        let mut b = b.primitive_part();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic. Panics on the zero polynomial.
    pub fn squarefree_part(&self) -> Poly {
        assert!(!self.is_zero(), "squarefree part of the zero polynomial");
        if self.is_constant() {
            return Poly::one();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_exact(&g)
            .expect("gcd divides its argument")
            .monic()
    }

    /// Yun's square-free factorization: returns `(factor, multiplicity)`
    /// pairs of monic, pairwise coprime, square-free factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "decomposition of the zero polynomial");
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let a0 = Poly::gcd(&p, &dp);
        let mut b = p.div_exact(&a0).expect("gcd divides");
        let mut c = dp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = Poly::gcd(&b, &d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// `p(x + a)`.
    pub fn compose_shift(&self, a: &Rational) -> Poly {
        // Horner with the linear polynomial x + a.
        let lin = Poly::new(vec![a.clone(), Rational::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading_coeff().abs();
        let max = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |m, v| if v > m { v } else { m });
        max + Rational::one()
    }

    /// Coefficients rendered as exact `p/q` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rat_to_string))
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = serde::Deserialize::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for v in raw {
            let text = match v {
                serde_json::Value::String(t) => t,
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(serde::de::Error::custom(format!("bad coefficient {other}"))),
            };
            coeffs.push(parse_rational(&text).map_err(serde::de::Error::custom)?);
        }
        Ok(Poly::new(coeffs))
    }
}

/// Serde adapters emitting rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::{parse_rational, rat_to_string, Rational};

    pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t: String = serde::Deserialize::deserialize(d)?;
        parse_rational(&t).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::{rat_to_string, Rational};

        pub fn serialize<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(rat_to_string))
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("({})", rat_to_string(&abs))
            };
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{body}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1, 1]) + p(&[-1, 1]), p(&[0, 2]));
        assert_eq!(p(&[3, 0, 2]) + Poly::zero(), p(&[3, 0, 2]));
        let s = p(&[0, 0, 1]) + p(&[0, 0, -1]);
        assert!(s.is_zero());
        assert_eq!(s.degree(), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[-1, 1]) * p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[5, -2, 7]) * Poly::one(), p(&[5, -2, 7]));
        // (x-1)^2 (x-2) expanded by hand
        let lhs = p(&[-1, 1]).pow(2) * p(&[-2, 1]);
        assert_eq!(lhs, p(&[-2, 5, -4, 1]));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, -1, 0, 1]).derivative(), p(&[-1, 0, 3]));
        assert!(p(&[7]).derivative().is_zero());
        let d = p(&[-1, 1]).pow(4).derivative();
        assert!(d.eval(&rat(1)).is_zero());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), Poly::zero()));
        let (q, r) = p(&[0, 1]).divrem(&p(&[0, 0, 1])).unwrap();
        assert_eq!((q, r), (Poly::zero(), p(&[0, 1])));
        let (q, r) = p(&[1, 0, 0, 1]).divrem(&p(&[1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, -1, 1]), Poly::zero()));
        assert_eq!(
            p(&[1, 1]).divrem(&Poly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        let a = p(&[-1, 1]).pow(2) * p(&[2, 1]);
        let b = p(&[-1, 1]) * p(&[3, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[-1, 1]));
        let q = p(&[4, 0, 2]);
        assert_eq!(Poly::gcd(&q, &Poly::zero()), q.monic());
        assert_eq!(Poly::gcd(&p(&[1, 0, 1]), &p(&[2, 0, 1])), Poly::one());
    }

    #[test]
    fn squarefree_examples() {
        let f = p(&[-1, 1]).pow(2) * p(&[-2, 1]);
        assert_eq!(f.squarefree_part(), p(&[-1, 1]) * p(&[-2, 1]));
        let g = p(&[-6, 11, -6, 1]);
        assert_eq!(g.scale(&rat(3)).squarefree_part(), g);
        assert_eq!(p(&[0, 0, 0, 0, 1]).squarefree_part(), Poly::x());
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        let f = p(&[-1, 1]).pow(3) * p(&[2, 1]).pow(2) * p(&[5, 1]);
        let dec = f.scale(&ratio(-3, 2)).squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[5, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&rat(2)), rat(3));
        assert!(p(&[-1, 0, 1]).eval(&rat(-1)).is_zero());
        assert_eq!(p(&[-2, 5, -4, 1]).eval(&rat(3)), rat(4));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).compose_shift(&rat(1)), p(&[1, 2, 1]));
        let q = p(&[3, -1, 4]);
        assert_eq!(q.compose_shift(&rat(0)), q);
        // roots 1, 2 move to 0, 1
        let s = (p(&[-1, 1]) * p(&[-2, 1])).compose_shift(&rat(1));
        assert!(s.eval(&rat(0)).is_zero() && s.eval(&rat(1)).is_zero());
    }

    #[test]
    fn content_keeps_sign() {
        let q = Poly::new(vec![ratio(-2, 3), ratio(4, 9)]);
        let pp = q.primitive_part();
        assert_eq!(pp, p(&[-3, 2]));
        assert_eq!(pp.scale(&q.content()), q);
    }

    #[test]
    fn display_is_readable() {
        let q = Poly::new(vec![ratio(1, 2), rat(-1), rat(0), rat(3)]);
        assert_eq!(q.to_string(), "3*x^3 - x + (1/2)");
    }
}
