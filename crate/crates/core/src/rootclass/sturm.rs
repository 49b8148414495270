use num_traits::Zero;

use crate::polyx::{sign, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SturmError {
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("empty interval: lo must be below hi")]
    EmptyInterval,
    #[error("zero polynomial has no Sturm chain")]
    ZeroPolynomial,
}

/// Sturm chain `p_0 = f, p_1 = f', p_{i+1} = -rem(p_{i-1}, p_i)`, each
/// member rescaled by a positive constant to keep coefficients small.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(f: &Poly) -> Self {
        let mut chain = Vec::new();
        if f.is_zero() {
            return SturmChain { chain };
        }
        chain.push(f.primitive_part());
        let d = f.derivative();
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d.primitive_part());
        loop {
            let n = chain.len();
            let r = chain[n - 2]
                .rem(&chain[n - 1])
                .expect("nonzero chain member");
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive_part());
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Sign variations of the chain at `x`.
    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| sign(&p.leading_coeff())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = sign(&p.leading_coeff());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots over the whole line.
    pub fn total_real_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// Number of distinct real roots of `f` in `(lo, hi)`; neither endpoint
/// may be a root.
pub fn sturm_count(f: &Poly, lo: &Rational, hi: &Rational) -> Result<usize, SturmError> {
    if f.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(SturmError::EmptyInterval);
    }
    for e in [lo, hi] {
        if f.eval(e).is_zero() {
            return Err(SturmError::EndpointIsRoot(crate::polyx::rat_to_string(e)));
        }
    }
    let chain = SturmChain::new(f);
    Ok(chain.variations_at(lo) - chain.variations_at(hi))
}

/// Strips every factor `(x - e)` for the given rational points.
fn deflate(f: &Poly, points: &[&Rational]) -> Poly {
    let mut g = f.clone();
    for e in points {
        let lin = Poly::linear_root(e);
        while !g.is_zero() && g.eval(e).is_zero() {
            g = g.div_exact(&lin).expect("root gives exact linear factor");
        }
    }
    g
}

/// Distinct real roots of `f` in the open interval `(lo, hi)`. Endpoints
/// may be roots; they are divided out first.
pub fn count_open(f: &Poly, lo: &Rational, hi: &Rational) -> usize {
    assert!(!f.is_zero(), "count_open on the zero polynomial");
    if lo >= hi {
        return 0;
    }
    let g = deflate(f, &[lo, hi]);
    if g.is_constant() {
        return 0;
    }
    let chain = SturmChain::new(&g);
    chain.variations_at(lo) - chain.variations_at(hi)
}

/// Distinct real roots of `f` in the closed interval `[lo, hi]`.
pub fn count_closed(f: &Poly, lo: &Rational, hi: &Rational) -> usize {
    if lo == hi {
        return usize::from(f.eval(lo).is_zero());
    }
    count_open(f, lo, hi) + usize::from(f.eval(lo).is_zero()) + usize::from(f.eval(hi).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyx::{rat, ratio};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &rat(0), &rat(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &rat(-10), &rat(10)).unwrap(), 0);
        let cubic = p(&[-1, 1]) * p(&[-2, 1]) * p(&[-3, 1]);
        assert_eq!(sturm_count(&cubic, &ratio(3, 2), &ratio(7, 2)).unwrap(), 2);
    }

    #[test]
    fn sturm_errors() {
        let f = p(&[-1, 0, 1]);
        assert!(matches!(
            sturm_count(&f, &rat(1), &rat(3)),
            Err(SturmError::EndpointIsRoot(_))
        ));
        assert_eq!(
            sturm_count(&f, &rat(3), &rat(1)),
            Err(SturmError::EmptyInterval)
        );
        assert_eq!(
            sturm_count(&Poly::zero(), &rat(0), &rat(1)),
            Err(SturmError::ZeroPolynomial)
        );
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = p(&[-1, 1]).pow(3) * p(&[1, 0, 1]) * p(&[2, 1]).pow(2);
        assert_eq!(sturm_count(&f, &rat(-5), &rat(5)).unwrap(), 2);
        assert_eq!(SturmChain::new(&f).total_real_roots(), 2);
    }

    #[test]
    fn open_and_closed_counts_with_root_endpoints() {
        let f = p(&[-1, 1]) * p(&[-2, 1]) * p(&[-3, 1]);
        assert_eq!(count_open(&f, &rat(1), &rat(3)), 1);
        assert_eq!(count_closed(&f, &rat(1), &rat(3)), 3);
        assert_eq!(count_closed(&f, &rat(2), &rat(2)), 1);
        assert_eq!(count_open(&f, &rat(3), &rat(1)), 0);
    }
}
