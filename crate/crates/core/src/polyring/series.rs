use num_bigint::{BigInt, BigUint};

use super::coeffs::CoeffVec;
use super::IntPoly;

/// The first `order` coefficients of a formal power series. Trailing zeros
/// are kept: the length is the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub(crate) c: CoeffVec,
}

impl SeriesPrefix {
    pub(crate) fn from_vec(mut c: CoeffVec) -> Self {
        c.demote();
        SeriesPrefix { c }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        SeriesPrefix { c: CoeffVec::Small(coeffs) }
    }

    /// `1 + 0x + ... ` to the given order.
    pub fn one(order: usize) -> Self {
        let mut v = vec![0; order];
        if order > 0 {
            v[0] = 1;
        }
        SeriesPrefix::from_coeffs(v)
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeff(&self, m: usize) -> BigInt {
        self.c.get(m)
    }

    pub fn coeff_i64(&self, m: usize) -> Option<i64> {
        self.c.get_i64(m)
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        self.c.to_big()
    }

    /// Coefficients as machine words; panics if any does not fit.
    pub fn coeffs_i64(&self) -> Vec<i64> {
        (0..self.order())
            .map(|i| self.c.get_i64(i).expect("coefficient exceeds i64"))
            .collect()
    }

    pub fn height(&self) -> BigUint {
        self.c.max_abs()
    }

    /// Truncated product; the order is the smaller of the two.
    pub fn mul(&self, other: &SeriesPrefix) -> SeriesPrefix {
        let order = self.order().min(other.order());
        let a = IntPoly::from_vec(self.c.clone()).truncate(order);
        let b = IntPoly::from_vec(other.c.clone()).truncate(order);
        a.mul(&b).to_series(order)
    }

    /// Product with a polynomial, keeping this series' order.
    pub fn mul_poly(&self, p: &IntPoly) -> SeriesPrefix {
        let order = self.order();
        IntPoly::from_vec(self.c.clone()).mul(&p.truncate(order)).to_series(order)
    }

    /// `self(x^t)` to the same order.
    pub fn substitute_power(&self, t: usize) -> SeriesPrefix {
        let order = self.order();
        IntPoly::from_vec(self.c.clone())
            .truncate(order.div_ceil(t))
            .substitute_power(t)
            .to_series(order)
    }

    /// Polynomial with the same coefficients (trailing zeros dropped).
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::from_vec(self.c.clone())
    }
}
