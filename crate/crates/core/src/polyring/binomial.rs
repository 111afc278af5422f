//! Products of binomials `(1 - x^e)^{+-1}`.
//!
//! Cyclotomic polynomials, their inverses, the dilated factors of the
//! decomposition and the rational function `f` are all of this shape. Each
//! factor costs one linear pass over a truncated coefficient buffer, so
//! expanding to order `N` costs `O(N * factors)` instead of a dense product.

use super::coeffs::CoeffVec;
use super::{IntPoly, SeriesPrefix};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BinomialQuotient {
    /// Global sign, `+1` or `-1`.
    pub negative: bool,
    /// Exponents `e` of numerator factors `(1 - x^e)`.
    pub num: Vec<usize>,
    /// Exponents `e` of denominator factors `(1 - x^e)`.
    pub den: Vec<usize>,
}

impl BinomialQuotient {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(negative: bool, mut num: Vec<usize>, mut den: Vec<usize>) -> Self {
        assert!(num.iter().chain(&den).all(|&e| e > 0), "binomial exponents must be positive");
        num.sort_unstable();
        den.sort_unstable();
        // Cancel common factors.
        let (mut i, mut j) = (0, 0);
        let (mut n2, mut d2) = (Vec::new(), Vec::new());
        while i < num.len() && j < den.len() {
            match num[i].cmp(&den[j]) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Less => {
                    n2.push(num[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    d2.push(den[j]);
                    j += 1;
                }
            }
        }
        n2.extend_from_slice(&num[i..]);
        d2.extend_from_slice(&den[j..]);
        BinomialQuotient { negative, num: n2, den: d2 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = self.num.iter().chain(&other.num).copied().collect();
        let den = self.den.iter().chain(&other.den).copied().collect();
        Self::new(self.negative ^ other.negative, num, den)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.negative, self.den.clone(), self.num.clone())
    }

    /// Substitutes `x -> x^t`.
    pub fn dilate(&self, t: usize) -> Self {
        let num = self.num.iter().map(|e| e * t).collect();
        let den = self.den.iter().map(|e| e * t).collect();
        Self::new(self.negative, num, den)
    }

    /// `sum(num) - sum(den)`: the degree when the quotient is a polynomial.
    pub fn degree_if_polynomial(&self) -> i64 {
        self.num.iter().sum::<usize>() as i64 - self.den.iter().sum::<usize>() as i64
    }

    /// Multiplies `c` in place by this quotient, modulo `x^len`.
    pub(crate) fn apply(&self, c: &mut CoeffVec) {
        let mut bound = c.max_abs().try_into().unwrap_or(u64::MAX);
        if bound == u64::MAX {
            c.promote();
        }
        for &e in &self.num {
            c.mul_one_minus(e, &mut bound);
        }
        for &e in &self.den {
            c.div_one_minus(e, &mut bound);
        }
        if self.negative {
            c.negate();
        }
        c.demote();
    }

    /// The first `order` coefficients of the series expansion.
    pub fn expand(&self, order: usize) -> SeriesPrefix {
        let mut c = CoeffVec::zeros(order);
        if order > 0 {
            if let CoeffVec::Small(v) = &mut c {
                v[0] = 1;
            }
        }
        self.apply(&mut c);
        SeriesPrefix::from_vec(c)
    }

    /// Expands a quotient that is known to be a polynomial of the given degree.
    pub fn to_poly(&self, degree: usize) -> IntPoly {
        self.expand(degree + 1).to_poly()
    }

    /// `series * self` modulo `x^order(series)`.
    pub fn apply_to(&self, series: &SeriesPrefix) -> SeriesPrefix {
        let mut c = series.c.clone();
        self.apply(&mut c);
        SeriesPrefix::from_vec(c)
    }
}
