//! Coefficient storage shared by [`IntPoly`](super::IntPoly) and
//! [`SeriesPrefix`](super::SeriesPrefix).
//!
//! Values live in `i64` while they fit and are promoted to `BigInt` the first
//! time an operation could overflow. Storage is kept canonical: `Small`
//! whenever every value fits in an `i64`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub(crate) enum CoeffVec {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl CoeffVec {
    pub fn zeros(len: usize) -> Self {
        CoeffVec::Small(vec![0; len])
    }

    pub fn len(&self) -> usize {
        match self {
            CoeffVec::Small(v) => v.len(),
            CoeffVec::Big(v) => v.len(),
        }
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self {
            CoeffVec::Small(v) => v.get(i).map_or_else(BigInt::zero, |&c| BigInt::from(c)),
            CoeffVec::Big(v) => v.get(i).cloned().unwrap_or_default(),
        }
    }

    pub fn get_i64(&self, i: usize) -> Option<i64> {
        match self {
            CoeffVec::Small(v) => Some(v.get(i).copied().unwrap_or(0)),
            CoeffVec::Big(v) => v.get(i).map_or(Some(0), |c| c.to_i64()),
        }
    }

    pub fn is_zero_at(&self, i: usize) -> bool {
        match self {
            CoeffVec::Small(v) => v[i] == 0,
            CoeffVec::Big(v) => v[i].is_zero(),
        }
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        match self {
            CoeffVec::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            CoeffVec::Big(v) => v.clone(),
        }
    }

    pub fn as_small(&self) -> Option<&[i64]> {
        match self {
            CoeffVec::Small(v) => Some(v),
            CoeffVec::Big(_) => None,
        }
    }

    pub fn from_big(v: Vec<BigInt>) -> Self {
        let mut out = CoeffVec::Big(v);
        out.demote();
        out
    }

    pub fn promote(&mut self) {
        if let CoeffVec::Small(v) = self {
            *self = CoeffVec::Big(v.iter().map(|&c| BigInt::from(c)).collect());
        }
    }

    /// Switches back to machine words when every value fits.
    pub fn demote(&mut self) {
        if let CoeffVec::Big(v) = self {
            let small: Option<Vec<i64>> = v.iter().map(|c| c.to_i64()).collect();
            if let Some(small) = small {
                *self = CoeffVec::Small(small);
            }
        }
    }

    pub fn resize(&mut self, len: usize) {
        match self {
            CoeffVec::Small(v) => v.resize(len, 0),
            CoeffVec::Big(v) => v.resize(len, BigInt::zero()),
        }
    }

    /// Drops trailing zeros.
    pub fn trim(&mut self) {
        match self {
            CoeffVec::Small(v) => {
                while v.last() == Some(&0) {
                    v.pop();
                }
            }
            CoeffVec::Big(v) => {
                while v.last().is_some_and(|c| c.is_zero()) {
                    v.pop();
                }
            }
        }
    }

    pub fn negate(&mut self) {
        match self {
            CoeffVec::Small(v) => {
                if v.contains(&i64::MIN) {
                    self.promote();
                    self.negate();
                    self.demote();
                } else {
                    v.iter_mut().for_each(|c| *c = -*c);
                }
            }
            CoeffVec::Big(v) => v.iter_mut().for_each(|c| *c = -std::mem::take(c)),
        }
    }

    pub fn max_abs(&self) -> BigUint {
        match self {
            CoeffVec::Small(v) => BigUint::from(max_abs_small(v)),
            CoeffVec::Big(v) => v.iter().map(|c| c.magnitude().clone()).max().unwrap_or_default(),
        }
    }

    pub fn abs_sum(&self) -> BigUint {
        match self {
            CoeffVec::Small(v) => {
                let s: u128 = v.iter().map(|&c| c.unsigned_abs() as u128).sum();
                BigUint::from(s)
            }
            CoeffVec::Big(v) => v.iter().map(|c| c.magnitude().clone()).sum(),
        }
    }

    /// `self *= (1 - x^e)` modulo `x^len`.
    pub fn mul_one_minus(&mut self, e: usize, bound: &mut u64) {
        assert!(e > 0, "exponent must be positive");
        if let CoeffVec::Small(v) = self {
            if ensure_headroom(v, bound, 2) {
                mul_one_minus_small(v, e);
                return;
            }
            self.promote();
        }
        if let CoeffVec::Big(v) = self {
            for i in (e..v.len()).rev() {
                let prev = v[i - e].clone();
                v[i] -= prev;
            }
        }
    }

    /// `self /= (1 - x^e)` modulo `x^len`, i.e. `self *= 1 + x^e + x^{2e} + ...`.
    pub fn div_one_minus(&mut self, e: usize, bound: &mut u64) {
        assert!(e > 0, "exponent must be positive");
        if let CoeffVec::Small(v) = self {
            let terms = if v.is_empty() { 1 } else { (v.len() as u64 - 1) / e as u64 + 1 };
            if ensure_headroom(v, bound, terms) {
                div_one_minus_small(v, e);
                return;
            }
            self.promote();
        }
        if let CoeffVec::Big(v) = self {
            for i in e..v.len() {
                let prev = v[i - e].clone();
                v[i] += prev;
            }
        }
    }
}

impl PartialEq for CoeffVec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (CoeffVec::Small(a), CoeffVec::Small(b)) => a == b,
            _ => self.len() == other.len() && (0..self.len()).all(|i| self.get(i) == other.get(i)),
        }
    }
}

impl Eq for CoeffVec {}

pub(crate) fn max_abs_small(v: &[i64]) -> u64 {
    v.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
}

const SAFE: u64 = i64::MAX as u64;

/// Makes sure a pass that can grow magnitudes by `factor` cannot overflow.
/// `bound` is an upper bound on the current maximum magnitude; it is
/// tightened from the data when the cheap estimate runs out of room.
fn ensure_headroom(v: &[i64], bound: &mut u64, factor: u64) -> bool {
    if let Some(next) = bound.checked_mul(factor).filter(|&b| b <= SAFE) {
        *bound = next;
        return true;
    }
    *bound = max_abs_small(v);
    match bound.checked_mul(factor).filter(|&b| b <= SAFE) {
        Some(next) => {
            *bound = next;
            true
        }
        None => false,
    }
}

fn mul_one_minus_small(v: &mut [i64], e: usize) {
    let n = v.len();
    if e >= n {
        return;
    }
    // Blocks of width e, last to first, so each source block is still unmodified.
    let mut start = e + ((n - 1 - e) / e) * e;
    loop {
        let len = (n - start).min(e);
        let (lo, hi) = v.split_at_mut(start);
        let src = &lo[start - e..start - e + len];
        for (d, s) in hi[..len].iter_mut().zip(src) {
            *d = d.wrapping_sub(*s);
        }
        if start == e {
            break;
        }
        start -= e;
    }
}

fn div_one_minus_small(v: &mut [i64], e: usize) {
    let n = v.len();
    let mut start = e;
    while start < n {
        let len = (n - start).min(e);
        let (lo, hi) = v.split_at_mut(start);
        let src = &lo[start - e..start - e + len];
        for (d, s) in hi[..len].iter_mut().zip(src) {
            *d = d.wrapping_add(*s);
        }
        start += e;
    }
}
