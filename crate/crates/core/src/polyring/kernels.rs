//! Exact dense kernels, generic over a coefficient type whose arithmetic may
//! report overflow. `i128` is the fast path; `BigInt` never overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Below this many terms (in the shorter operand) multiplication is schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 64;

pub(crate) trait Coef: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// `Ok(Some(q))` if `d` divides `self`, `Ok(None)` if not, `Err(())` on overflow.
    fn exact_div(&self, d: &Self) -> Result<Option<Self>, ()>;
    fn is_unit(&self) -> bool;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn exact_div(&self, d: &Self) -> Result<Option<Self>, ()> {
        let r = self.checked_rem(*d).ok_or(())?;
        if r != 0 {
            return Ok(None);
        }
        self.checked_div(*d).map(Some).ok_or(())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn exact_div(&self, d: &Self) -> Result<Option<Self>, ()> {
        let (q, r) = self.div_rem(d);
        Ok(Zero::is_zero(&r).then_some(q))
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

pub(crate) fn schoolbook<T: Coef>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y)?)?;
        }
    }
    Some(out)
}

fn add_into<T: Coef>(dst: &mut [T], src: &[T]) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.add(s)?;
    }
    Some(())
}

fn sub_into<T: Coef>(dst: &mut [T], src: &[T]) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.sub(s)?;
    }
    Some(())
}

fn padded_sum<T: Coef>(lo: &[T], hi: &[T]) -> Option<Vec<T>> {
    let mut out = lo.to_vec();
    if hi.len() > out.len() {
        out.resize(hi.len(), T::zero());
    }
    add_into(&mut out, hi)?;
    Some(out)
}

/// Karatsuba splitting above [`KARATSUBA_THRESHOLD`], schoolbook below.
pub(crate) fn karatsuba<T: Coef>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    if a.len() <= m || b.len() <= m {
        // Unbalanced: split only the longer operand.
        let (long, short) = if a.len() > b.len() { (a, b) } else { (b, a) };
        for (k, chunk) in long.chunks(short.len()).enumerate() {
            let part = karatsuba(chunk, short)?;
            add_into(&mut out[k * short.len()..], &part)?;
        }
        return Some(out);
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(a0, b0)?;
    let z2 = karatsuba(a1, b1)?;
    let mut z1 = karatsuba(&padded_sum(a0, a1)?, &padded_sum(b0, b1)?)?;
    sub_into(&mut z1, &z0)?;
    sub_into(&mut z1, &z2)?;
    add_into(&mut out, &z0)?;
    add_into(&mut out[m..], &z1)?;
    add_into(&mut out[2 * m..], &z2)?;
    Some(out)
}

pub(crate) enum DivOutcome<T> {
    Quotient(Vec<T>),
    NotDivisible,
    Overflow,
}

/// Exact division by recurrence from the constant term. Both inputs are
/// trimmed and `b` is nonzero with `b[0] != 0`. Every remainder coefficient
/// is checked.
pub(crate) fn div_exact<T: Coef>(a: &[T], b: &[T]) -> DivOutcome<T> {
    if a.is_empty() {
        return DivOutcome::Quotient(Vec::new());
    }
    if a.len() < b.len() {
        return DivOutcome::NotDivisible;
    }
    let qlen = a.len() - b.len() + 1;
    let b0 = &b[0];
    let tail: Vec<(usize, &T)> = b.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
    let mut q: Vec<T> = Vec::with_capacity(qlen);
    for i in 0..a.len() {
        let mut acc = a[i].clone();
        for &(j, bj) in &tail {
            if j > i {
                break;
            }
            let k = i - j;
            if k >= qlen || q[k].is_zero() {
                continue;
            }
            let Some(t) = bj.mul(&q[k]) else { return DivOutcome::Overflow };
            let Some(next) = acc.sub(&t) else { return DivOutcome::Overflow };
            acc = next;
        }
        if i < qlen {
            match acc.exact_div(b0) {
                Ok(Some(c)) => q.push(c),
                Ok(None) => return DivOutcome::NotDivisible,
                Err(()) => return DivOutcome::Overflow,
            }
        } else if !acc.is_zero() {
            return DivOutcome::NotDivisible;
        }
    }
    DivOutcome::Quotient(q)
}

/// First `n` coefficients of `1/a`; `a[0]` must be a unit.
pub(crate) fn series_inverse<T: Coef>(a: &[T], n: usize) -> Option<Vec<T>> {
    let a0 = &a[0];
    let tail: Vec<(usize, &T)> = a.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
    let mut out: Vec<T> = Vec::with_capacity(n);
    if n == 0 {
        return Some(out);
    }
    // a0 = +-1, so a0^{-1} = a0.
    out.push(a0.clone());
    for m in 1..n {
        let mut acc = T::zero();
        for &(j, aj) in &tail {
            if j > m {
                break;
            }
            acc = acc.add(&aj.mul(&out[m - j])?)?;
        }
        out.push(T::zero().sub(&a0.mul(&acc)?)?);
    }
    Some(out)
}
