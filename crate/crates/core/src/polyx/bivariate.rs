use std::ops::{Add, Mul, Neg, Sub};

use super::Poly;

/// Polynomial in `x` and `y`, stored as coefficients in `y`:
/// `coeffs[j]` is the `Poly` in `x` multiplying `y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    coeffs: Vec<Poly>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        let mut b = BivariatePoly { coeffs };
        while b.coeffs.last().is_some_and(|c| c.is_zero()) {
            b.coeffs.pop();
        }
        b
    }

    pub fn zero() -> Self {
        BivariatePoly { coeffs: Vec::new() }
    }

    /// A polynomial in `x` alone.
    pub fn from_x(p: Poly) -> Self {
        BivariatePoly::new(vec![p])
    }

    /// The monomial `y`.
    pub fn y() -> Self {
        BivariatePoly::new(vec![Poly::zero(), Poly::one()])
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.degree().map(|d| d + j))
            .max()
    }

    pub fn partial_x(&self) -> Self {
        BivariatePoly::new(self.coeffs.iter().map(Poly::derivative).collect())
    }

    pub fn partial_y(&self) -> Self {
        BivariatePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&super::rat(j as i64)))
                .collect(),
        )
    }
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Poly::zero();
        BivariatePoly::new(
            (0..n)
                .map(|j| self.coeffs.get(j).unwrap_or(&z) + rhs.coeffs.get(j).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BivariatePoly::new(out)
    }
}
