//! Complete discrimination system: discrimination matrix, discriminant
//! sequence, sign lists and the resulting real/imaginary root counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::polyx::{rat, sign, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiscriminationError {
    #[error("polynomial must have degree at least 1")]
    DegreeZero,
}

/// The `2n x 2n` Sylvester-style matrix of `f` and `f'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminationMatrix {
    entries: Vec<Vec<Rational>>,
}

impl DiscriminationMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantSequence {
    #[serde(with = "crate::polyx::serde_rat::vec")]
    pub values: Vec<Rational>,
}

impl DiscriminantSequence {
    pub fn sign_list(&self) -> SignList {
        SignList {
            signs: self.values.iter().map(sign).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignList {
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RevisedSignList {
    pub signs: Vec<i8>,
}

impl RevisedSignList {
    /// Sign changes among the nonzero members.
    pub fn sign_changes(&self) -> usize {
        let nz: Vec<i8> = self.signs.iter().copied().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn nonvanishing(&self) -> usize {
        self.signs.iter().filter(|&&s| s != 0).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub distinct_real: usize,
    pub imaginary_pairs: usize,
}

/// Descending coefficients `a_0, ..., a_n` as written in the classical
/// layout `f = a_0 x^n + ... + a_n`.
fn descending(f: &Poly) -> Vec<Rational> {
    f.coeffs().iter().rev().cloned().collect()
}

pub fn discrimination_matrix(f: &Poly) -> Result<DiscriminationMatrix, DiscriminationError> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(DiscriminationError::DegreeZero),
    };
    let a = descending(f);
    // f' padded with a leading zero so both rows have n + 1 entries.
    let mut da = vec![Rational::zero()];
    da.extend(descending(&f.derivative()));
    let size = 2 * n;
    let mut entries = vec![vec![Rational::zero(); size]; size];
    for k in 0..n {
        for (j, c) in a.iter().enumerate() {
            if k + j < size {
                entries[2 * k][k + j] = c.clone();
            }
        }
        for (j, c) in da.iter().enumerate() {
            if k + j < size {
                entries[2 * k + 1][k + j] = c.clone();
            }
        }
    }
    Ok(DiscriminationMatrix { entries })
}

/// Fraction-free determinant of a square integer matrix (Bareiss).
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut neg = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    neg = !neg;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if neg {
        -d
    } else {
        d
    }
}

/// `(D_1, ..., D_n)`: leading principal minors of even order `2k`.
pub fn discriminant_sequence(f: &Poly) -> Result<DiscriminantSequence, DiscriminationError> {
    let n = f
        .degree()
        .filter(|&n| n >= 1)
        .ok_or(DiscriminationError::DegreeZero)?;
    // Work on an integer multiple lambda * f; every row of the 2k minor
    // scales by lambda, so D_k(f) = D_k(lambda f) / lambda^(2k).
    let lambda = f.content().recip();
    let g = f.scale(&lambda);
    let m = discrimination_matrix(&g)?;
    let ints: Vec<Vec<BigInt>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|c| c.to_integer()).collect())
        .collect();
    let values = (1..=n)
        .map(|k| {
            let sub: Vec<Vec<BigInt>> = ints[..2 * k]
                .iter()
                .map(|row| row[..2 * k].to_vec())
                .collect();
            let d = Rational::from_integer(bareiss_det(sub));
            d / num_traits::pow(lambda.clone(), 2 * k)
        })
        .collect();
    Ok(DiscriminantSequence { values })
}

/// Replaces interior zero runs `s_i != 0, 0, ..., 0, s_{i+j} != 0` by
/// `eps_{i+r} = (-1)^floor((r+1)/2) * s_i`. Zero runs without a nonzero
/// terminator are kept as they are.
pub fn revised_sign_list(s: &SignList) -> RevisedSignList {
    let signs = &s.signs;
    let mut out = signs.clone();
    let mut i = 0;
    while i < signs.len() {
        if signs[i] == 0 {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < signs.len() && signs[j] == 0 {
            j += 1;
        }
        if j < signs.len() && j > i + 1 {
            for (r, slot) in out[i + 1..j].iter_mut().enumerate() {
                let r = r + 1;
                let flip = if ((r + 1) / 2) % 2 == 1 { -1 } else { 1 };
                *slot = flip * signs[i];
            }
        }
        i = j;
    }
    RevisedSignList { signs: out }
}

/// Distinct real roots and pairs of distinct conjugate imaginary roots.
pub fn count_roots(f: &Poly) -> Result<RootCount, DiscriminationError> {
    let seq = discriminant_sequence(f)?;
    let revised = revised_sign_list(&seq.sign_list());
    let v = revised.sign_changes();
    let l = revised.nonvanishing();
    Ok(RootCount {
        distinct_real: l - 2 * v,
        imaginary_pairs: v,
    })
}

/// Power sums `s_0, ..., s_upto` of the roots via Newton's identities.
pub fn power_sums(f: &Poly, upto: usize) -> Vec<Rational> {
    let n = f.degree().expect("power sums of the zero polynomial");
    assert!(n >= 1, "power sums need degree >= 1");
    // monic with descending coefficients 1, e_1, ..., e_n
    let a: Vec<Rational> = descending(&f.monic());
    let mut s = vec![rat(n as i64)];
    for k in 1..=upto {
        let mut acc = Rational::zero();
        for i in 1..k.min(n + 1) {
            acc += &a[i] * &s[k - i];
        }
        if k <= n {
            acc += &a[k] * rat(k as i64);
        }
        s.push(-acc);
    }
    s
}

/// Hankel determinant `S_k = det(s_{i+j})_{0 <= i, j < k}`.
pub fn hankel_determinant(sums: &[Rational], k: usize) -> Rational {
    let m: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| sums[i + j].clone()).collect())
        .collect();
    rational_det(m)
}

/// Determinant by Gaussian elimination over the rationals.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let t = &factor * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyx::ratio;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn quadratic_matrix_layout() {
        // x^2 + b x + c with b = 3, c = 5
        let m = discrimination_matrix(&p(&[5, 3, 1])).unwrap();
        let want = [[1, 3, 5, 0], [0, 2, 3, 0], [0, 1, 3, 5], [0, 0, 2, 3]];
        for (r, row) in want.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(m.get(r, c), &rat(*v), "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn matrix_shape_and_first_minor() {
        let f = p(&[1, -2, 0, 4, 1, 1]);
        assert_eq!(discrimination_matrix(&f).unwrap().size(), 10);
        // monic f: D_1 = det [[1, a_1], [0, n]] = n
        let d = discriminant_sequence(&f).unwrap();
        assert_eq!(d.values[0], rat(5));
        assert_eq!(
            discrimination_matrix(&p(&[3])),
            Err(DiscriminationError::DegreeZero)
        );
    }

    #[test]
    fn quadratic_discriminant_signs() {
        // D_2 of x^2 + bx + c is -(b^2 - 4c) up to the layout sign; check
        // the signs the classifier needs.
        let plus = discriminant_sequence(&p(&[1, 0, 1])).unwrap();
        assert_eq!(plus.sign_list().signs, vec![1, -1]);
        let minus = discriminant_sequence(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(minus.sign_list().signs, vec![1, 1]);
        let double = discriminant_sequence(&p(&[1, -2, 1])).unwrap();
        assert!(double.values[1].is_zero());
    }

    #[test]
    fn revised_list_examples() {
        let r = |v: Vec<i8>| revised_sign_list(&SignList { signs: v }).signs;
        assert_eq!(r(vec![1, 1, -1]), vec![1, 1, -1]);
        assert_eq!(r(vec![1, 0, 0, 0, 1]), vec![1, -1, -1, 1, 1]);
        assert_eq!(r(vec![1, 0, 0]), vec![1, 0, 0]);
        assert_eq!(r(vec![-1, 0, 1]), vec![-1, 1, 1]);
    }

    #[test]
    fn count_examples() {
        let c = count_roots(&p(&[1, 0, 1])).unwrap();
        assert_eq!((c.distinct_real, c.imaginary_pairs), (0, 1));
        let c = count_roots(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!((c.distinct_real, c.imaginary_pairs), (3, 0));
        let f = p(&[-1, 1]).pow(2) * p(&[2, 1]);
        let c = count_roots(&f).unwrap();
        assert_eq!((c.distinct_real, c.imaginary_pairs), (2, 0));
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&p(&[-1, 0, 1]), 2), vec![rat(2), rat(0), rat(2)]);
        let s = power_sums(&(p(&[-1, 1]) * p(&[-2, 1])), 2);
        assert_eq!((s[1].clone(), s[2].clone()), (rat(3), rat(5)));
        let s = power_sums(&p(&[0, 0, 0, 1]), 3);
        assert!(s[1..].iter().all(|v| v.is_zero()));
        // past the degree: roots 1, 2 -> s_5 = 1 + 32
        let s = power_sums(&(p(&[-1, 1]) * p(&[-2, 1])).scale(&ratio(7, 3)), 5);
        assert_eq!(s[5], rat(33));
    }

    #[test]
    fn hankel_matches_for_cubic() {
        let f = p(&[-6, 11, -6, 1]);
        let d = discriminant_sequence(&f).unwrap();
        let s = power_sums(&f, 4);
        for k in 1..=3 {
            assert_eq!(d.values[k - 1], hankel_determinant(&s, k), "k = {k}");
        }
    }

    #[test]
    fn non_monic_scaling() {
        // D_k(lambda f) = lambda^(2k) D_k(f)
        let f = p(&[3, -1, 2, 1]);
        let g = f.scale(&ratio(-2, 3));
        let df = discriminant_sequence(&f).unwrap();
        let dg = discriminant_sequence(&g).unwrap();
        for k in 1..=3 {
            let factor = num_traits::pow(ratio(-2, 3), 2 * k);
            assert_eq!(dg.values[k - 1], &df.values[k - 1] * factor);
        }
    }
}
