use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::coeffs::CoeffVec;
use super::kernels::{self, Coef, DivOutcome};
use super::SeriesPrefix;
use crate::error::{Error, Result};

/// Dense integer polynomial, coefficients ascending. Trailing zeros are never
/// stored; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub(crate) c: CoeffVec,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { c: CoeffVec::Small(Vec::new()) }
    }

    pub fn one() -> Self {
        IntPoly::from_coeffs(vec![1])
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        IntPoly::from_vec(CoeffVec::Small(coeffs))
    }

    pub fn from_big(coeffs: Vec<BigInt>) -> Self {
        IntPoly::from_vec(CoeffVec::from_big(coeffs))
    }

    pub(crate) fn from_vec(mut c: CoeffVec) -> Self {
        c.trim();
        c.demote();
        IntPoly { c }
    }

    /// `c * x^e`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        IntPoly::from_coeffs(v)
    }

    pub fn is_zero(&self) -> bool {
        self.c.len() == 0
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Number of stored coefficients, `degree + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, m: usize) -> BigInt {
        self.c.get(m)
    }

    /// Coefficient of `x^m` if it fits in an `i64`.
    pub fn coeff_i64(&self, m: usize) -> Option<i64> {
        self.c.get_i64(m)
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        self.c.to_big()
    }

    /// All coefficients as machine words, when they fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        match &self.c {
            CoeffVec::Small(v) => Some(v.clone()),
            CoeffVec::Big(v) => v.iter().map(|c| c.to_i64()).collect(),
        }
    }

    pub fn as_i64_slice(&self) -> Option<&[i64]> {
        self.c.as_small()
    }

    /// Maximum absolute coefficient; 0 for the zero polynomial.
    pub fn height(&self) -> BigUint {
        self.c.max_abs()
    }

    /// Sum of absolute coefficients.
    pub fn abs_sum(&self) -> BigUint {
        self.c.abs_sum()
    }

    pub fn neg(&self) -> Self {
        let mut c = self.c.clone();
        c.negate();
        IntPoly { c }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.len().max(other.len());
        let out = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPoly::from_big(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    /// Exact product. Schoolbook for short operands, Karatsuba above
    /// [`KARATSUBA_THRESHOLD`](super::KARATSUBA_THRESHOLD) terms.
    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if let (Some(a), Some(b)) = (self.c.as_small(), other.c.as_small()) {
            let a: Vec<i128> = a.iter().map(|&x| x as i128).collect();
            let b: Vec<i128> = b.iter().map(|&x| x as i128).collect();
            if let Some(p) = kernels::karatsuba(&a, &b) {
                return IntPoly::from_vec(narrow(p));
            }
        }
        let p = kernels::karatsuba(&self.coeffs(), &other.coeffs()).expect("bigint arithmetic cannot overflow");
        IntPoly::from_big(p)
    }

    /// Returns `q` with `self = divisor * q`, or `NotDivisible` when any
    /// remainder coefficient is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        // Factor out x^v from the divisor; the dividend must carry it too.
        let v = (0..divisor.len()).find(|&i| !divisor.c.is_zero_at(i)).unwrap_or(0);
        if (0..v.min(self.len())).any(|i| !self.c.is_zero_at(i)) {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let a = self.shift_down(v);
        let b = divisor.shift_down(v);
        if let (Some(sa), Some(sb)) = (a.c.as_small(), b.c.as_small()) {
            let sa: Vec<i128> = sa.iter().map(|&x| x as i128).collect();
            let sb: Vec<i128> = sb.iter().map(|&x| x as i128).collect();
            match kernels::div_exact(&sa, &sb) {
                DivOutcome::Quotient(q) => return Ok(IntPoly::from_vec(narrow(q))),
                DivOutcome::NotDivisible => return Err(Error::NotDivisible),
                DivOutcome::Overflow => {}
            }
        }
        match kernels::div_exact(&a.coeffs(), &b.coeffs()) {
            DivOutcome::Quotient(q) => Ok(IntPoly::from_big(q)),
            DivOutcome::NotDivisible => Err(Error::NotDivisible),
            DivOutcome::Overflow => unreachable!("bigint arithmetic cannot overflow"),
        }
    }

    fn shift_down(&self, v: usize) -> IntPoly {
        if v == 0 {
            return self.clone();
        }
        IntPoly::from_big(self.coeffs().split_off(v.min(self.len())))
    }

    /// First `n` coefficients of `1/self` as a power series.
    pub fn series_inverse(&self, n: usize) -> Result<SeriesPrefix> {
        let c0 = self.coeff(0);
        if !Coef::is_unit(&c0) {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        if let Some(a) = self.c.as_small() {
            let a: Vec<i128> = a.iter().map(|&x| x as i128).collect();
            if let Some(s) = kernels::series_inverse(&a, n) {
                return Ok(SeriesPrefix::from_vec(narrow(s)));
            }
        }
        let s = kernels::series_inverse(&self.coeffs(), n).expect("bigint arithmetic cannot overflow");
        Ok(SeriesPrefix::from_vec(CoeffVec::from_big(s)))
    }

    /// `self(x^t)`.
    pub fn substitute_power(&self, t: usize) -> IntPoly {
        assert!(t > 0, "substitution exponent must be positive");
        if t == 1 || self.len() <= 1 {
            return self.clone();
        }
        let len = (self.len() - 1) * t + 1;
        let c = match &self.c {
            CoeffVec::Small(v) => {
                let mut out = vec![0i64; len];
                for (m, &x) in v.iter().enumerate() {
                    out[m * t] = x;
                }
                CoeffVec::Small(out)
            }
            CoeffVec::Big(v) => {
                let mut out = vec![<BigInt as Zero>::zero(); len];
                for (m, x) in v.iter().enumerate() {
                    out[m * t] = x.clone();
                }
                CoeffVec::Big(out)
            }
        };
        IntPoly { c }
    }

    /// `self mod x^n`.
    pub fn truncate(&self, n: usize) -> IntPoly {
        let mut c = self.c.clone();
        if n < c.len() {
            c.resize(n);
        }
        IntPoly::from_vec(c)
    }

    /// Copies the first `n` coefficients into a series prefix, padding with zeros.
    pub fn to_series(&self, n: usize) -> SeriesPrefix {
        let mut c = self.c.clone();
        c.resize(n);
        SeriesPrefix::from_vec(c)
    }

    /// `x^deg * self(1/x)`, using `deg = degree(self)`.
    pub fn reversed(&self) -> IntPoly {
        let mut v = self.coeffs();
        v.reverse();
        IntPoly::from_big(v)
    }
}

pub(crate) fn narrow(v: Vec<i128>) -> CoeffVec {
    let small: Option<Vec<i64>> = v.iter().map(|&x| i64::try_from(x).ok()).collect();
    match small {
        Some(s) => CoeffVec::Small(s),
        None => CoeffVec::Big(v.into_iter().map(BigInt::from).collect()),
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = c.magnitude();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let one = mag == &BigUint::from(1u8);
            match (m, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{m}")?,
                (_, false) => write!(f, "{mag}x^{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(v.to_vec())
    }

    #[test]
    fn normalization_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::from_big(vec![BigInt::from(3)]), p(&[3]));
    }

    #[test]
    fn products() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, -1])), p(&[1, 0, -1]));
        // Phi_3 * Phi_5
        assert_eq!(p(&[1, 1, 1]).mul(&p(&[1, 1, 1, 1, 1])), p(&[1, 2, 3, 3, 3, 2, 1]));
        assert!(IntPoly::zero().mul(&p(&[4, 5])).is_zero());
    }

    #[test]
    fn product_overflowing_i64_is_exact() {
        let big = p(&[i64::MAX, i64::MAX]);
        let sq = big.mul(&big);
        let m = BigInt::from(i64::MAX);
        assert_eq!(sq.coeffs(), vec![&m * &m, &m * &m * 2, &m * &m]);
        assert_eq!(sq.div_exact(&big).unwrap(), big);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), Err(Error::NotDivisible));
        // (x^15 - 1) / Phi_15
        let phi15 = p(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
        let x15 = IntPoly::monomial(1, 15).sub(&IntPoly::one());
        assert_eq!(x15.div_exact(&phi15).unwrap(), p(&[-1, -1, -1, 0, 0, 1, 1, 1]));
        // divisor with a power of x
        assert_eq!(p(&[0, 0, 2, 2]).div_exact(&p(&[0, 1, 1])).unwrap(), p(&[0, 2]));
        assert_eq!(p(&[1, 0, 2]).div_exact(&p(&[0, 1])), Err(Error::NotDivisible));
    }

    #[test]
    fn inversion() {
        assert_eq!(p(&[1, -1]).series_inverse(4).unwrap().coeffs_i64(), vec![1, 1, 1, 1]);
        assert_eq!(p(&[1, 1, 1]).series_inverse(6).unwrap().coeffs_i64(), vec![1, -1, 0, 1, -1, 0]);
        assert_eq!(p(&[1]).series_inverse(3).unwrap().coeffs_i64(), vec![1, 0, 0]);
        assert!(matches!(p(&[2, 1]).series_inverse(3), Err(Error::NotInvertible(_))));
        assert_eq!(p(&[-1, 1]).series_inverse(3).unwrap().coeffs_i64(), vec![-1, -1, -1]);
    }

    #[test]
    fn substitution() {
        assert_eq!(p(&[1, 1]).substitute_power(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, 1, 1]).substitute_power(2), p(&[1, 0, 1, 0, 1]));
        assert_eq!(p(&[4, 0, 7]).substitute_power(1), p(&[4, 0, 7]));
    }

    #[test]
    fn heights() {
        assert_eq!(p(&[-1, 1]).abs_sum(), BigUint::from(2u8));
        assert_eq!(IntPoly::zero().height(), BigUint::zero());
        assert_eq!(p(&[3, -7, 2]).height(), BigUint::from(7u8));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + x");
        assert_eq!(p(&[0, -2, 0, 1]).to_string(), "-2x + x^3");
    }
}
