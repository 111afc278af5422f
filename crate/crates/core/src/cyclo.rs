//! Cyclotomic polynomials `Phi_n`, the series `Psi_n = 1/Phi_n`, and inverse
//! cyclotomic polynomials `(1 - x^n) Psi_n`.
//!
//! The default constructions expand the Möbius product
//! `Phi_n = prod_{d | n} (1 - x^d)^{mu(n/d)}` (valid for `n > 1`) with one
//! linear pass per factor. The recursions `Phi_{np}(x) = Phi_n(x^p)/Phi_n(x)`
//! and `Psi_{np}(x) = Psi_n(x^p) Phi_n(x)` are kept as independent routes.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::polyring::{BinomialQuotient, IntPoly, SeriesPrefix};

/// A validated index `n` with its factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicIndex {
    pub n: u64,
    /// Distinct prime factors, strictly ascending.
    pub primes: Vec<u64>,
    pub omega: usize,
    pub totient: u64,
    /// Product of the distinct prime factors.
    pub kernel: u64,
    pub squarefree: bool,
    pub odd: bool,
}

impl CyclotomicIndex {
    pub fn is_odd_squarefree(&self) -> bool {
        self.odd && self.squarefree
    }

    /// Divisors of `n` when `n` is squarefree (all divisors of the kernel otherwise).
    pub fn kernel_divisors(&self) -> Vec<u64> {
        arith::squarefree_divisors(&self.primes)
    }

    /// Index of a product of distinct primes, in any order.
    pub fn from_primes(primes: &[u64]) -> Result<CyclotomicIndex> {
        let n = primes.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
        let n = n.ok_or_else(|| Error::NotAdmissible { n: 0, reason: "product overflows u64".into() })?;
        let idx = analyze(n)?;
        if !idx.squarefree || idx.omega != primes.len() {
            return Err(Error::NotAdmissible { n, reason: "primes must be distinct".into() });
        }
        Ok(idx)
    }
}

pub fn analyze(n: u64) -> Result<CyclotomicIndex> {
    if n == 0 {
        return Err(Error::InvalidIndex(n));
    }
    let fac = arith::factorize(n);
    let primes: Vec<u64> = fac.iter().map(|&(p, _)| p).collect();
    let kernel: u64 = primes.iter().product();
    let totient = fac.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product();
    Ok(CyclotomicIndex {
        n,
        omega: primes.len(),
        totient,
        kernel,
        squarefree: fac.iter().all(|&(_, e)| e == 1),
        odd: n % 2 == 1,
        primes,
    })
}

fn index_or_panic(n: u64) -> CyclotomicIndex {
    analyze(n).unwrap_or_else(|e| panic!("{e}"))
}

/// `Phi_n` as a product of binomials.
pub fn cyclotomic_factors(index: &CyclotomicIndex) -> BinomialQuotient {
    if index.n == 1 {
        // x - 1 = -(1 - x)
        return BinomialQuotient::new(true, vec![1], vec![]);
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (s, size) in arith::squarefree_divisors_with_size(&index.primes) {
        let e = (index.n / s) as usize;
        if size % 2 == 0 {
            num.push(e);
        } else {
            den.push(e);
        }
    }
    BinomialQuotient::new(false, num, den)
}

/// `Phi_{index.n}` by the Möbius product.
pub fn cyclotomic_of(index: &CyclotomicIndex) -> IntPoly {
    cyclotomic_factors(index).to_poly(index.totient as usize)
}

/// `Phi_n`; panics for `n = 0`.
pub fn cyclotomic(n: u64) -> IntPoly {
    cyclotomic_of(&index_or_panic(n))
}

/// `Phi_n` via `Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x)` over the ascending primes
/// of `n`, then `Phi_n(x) = Phi_{ker n}(x^{n / ker n})`.
pub fn cyclotomic_via_recursion(index: &CyclotomicIndex) -> IntPoly {
    let mut phi = IntPoly::from_coeffs(vec![-1, 1]);
    for &p in &index.primes {
        phi = phi
            .substitute_power(p as usize)
            .div_exact(&phi)
            .expect("Phi_m(x^p) is divisible by Phi_m(x)");
    }
    phi.substitute_power((index.n / index.kernel) as usize)
}

fn require_psi_index(n: u64) -> Result<CyclotomicIndex> {
    if n < 2 {
        return Err(Error::NotAdmissible { n, reason: "Psi_n needs n >= 2".into() });
    }
    analyze(n)
}

/// `Psi_n = 1/Phi_n` as a product of binomials (`n >= 2`).
pub fn psi_factors(index: &CyclotomicIndex) -> BinomialQuotient {
    cyclotomic_factors(index).inverse()
}

/// First `order` coefficients `c_n(0..order)` of `1/Phi_n`.
pub fn psi_prefix(n: u64, order: usize) -> Result<SeriesPrefix> {
    let index = require_psi_index(n)?;
    Ok(psi_factors(&index).expand(order))
}

/// `1/Phi_n` via `Psi_{mp}(x) = Psi_m(x^p) Phi_m(x)`, starting from
/// `Psi_1 = 1/(x - 1)`, then dilating by `n / ker n`.
pub fn psi_prefix_via_recursion(index: &CyclotomicIndex, order: usize) -> SeriesPrefix {
    let t = (index.n / index.kernel) as usize;
    let inner = psi_squarefree_rec(&index.primes, order.div_ceil(t));
    dilate_series(&inner, t, order)
}

fn psi_squarefree_rec(primes: &[u64], order: usize) -> SeriesPrefix {
    let Some((&p, rest)) = primes.split_last() else {
        // 1/(x - 1) = -(1 + x + x^2 + ...)
        return SeriesPrefix::from_coeffs(vec![-1; order]);
    };
    let inner = psi_squarefree_rec(rest, order.div_ceil(p as usize));
    let rest_index = CyclotomicIndex::from_primes(rest).expect("distinct primes");
    let phi_rest = cyclotomic_via_recursion(&rest_index);
    dilate_series(&inner, p as usize, order).mul_poly(&phi_rest)
}

fn dilate_series(s: &SeriesPrefix, t: usize, order: usize) -> SeriesPrefix {
    s.to_poly().truncate(order.div_ceil(t)).substitute_power(t).to_series(order)
}

/// `(1 - x^n) Psi_n(x)`, a polynomial of degree `n - phi(n)`.
pub fn inverse_cyclotomic_of(index: &CyclotomicIndex) -> IntPoly {
    let q = psi_factors(index).mul(&BinomialQuotient::new(false, vec![index.n as usize], vec![]));
    q.to_poly((index.n - index.totient) as usize)
}

pub fn inverse_cyclotomic(n: u64) -> Result<IntPoly> {
    Ok(inverse_cyclotomic_of(&require_psi_index(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(v.to_vec())
    }

    #[test]
    fn analyze_examples() {
        let i = analyze(105).unwrap();
        assert_eq!((i.primes.clone(), i.totient, i.kernel, i.squarefree, i.odd), (vec![3, 5, 7], 48, 105, true, true));
        let i = analyze(12).unwrap();
        assert_eq!((i.primes.clone(), i.kernel, i.squarefree, i.odd), (vec![2, 3], 6, false, false));
        let i = analyze(1).unwrap();
        assert_eq!((i.primes.len(), i.totient, i.kernel, i.omega), (0, 1, 1, 0));
        assert_eq!(analyze(0), Err(Error::InvalidIndex(0)));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(15), p(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        // Cross-check Phi_15 = (x^15 - 1)(x - 1) / ((x^3 - 1)(x^5 - 1))
        let xm = |e: usize| IntPoly::monomial(1, e).sub(&IntPoly::one());
        let q = xm(15).mul(&xm(1)).div_exact(&xm(3).mul(&xm(5))).unwrap();
        assert_eq!(q, cyclotomic(15));
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(cyclotomic_via_recursion(&analyze(3).unwrap()), p(&[1, 1, 1]));
        let phi3 = cyclotomic(3);
        assert_eq!(phi3.substitute_power(5).div_exact(&phi3).unwrap(), cyclotomic(15));
        let r18 = cyclotomic_via_recursion(&analyze(18).unwrap());
        assert_eq!(r18, cyclotomic(6).substitute_power(3));
        assert_eq!(r18, cyclotomic(18));
    }

    #[test]
    fn cross_algorithm_small_range() {
        for n in 1..=400 {
            let idx = analyze(n).unwrap();
            let phi = cyclotomic_of(&idx);
            assert_eq!(phi, cyclotomic_via_recursion(&idx), "n = {n}");
            assert_eq!(phi.degree(), Some(idx.totient as usize));
            assert_eq!(phi.coeff_i64(idx.totient as usize), Some(1));
        }
    }

    #[test]
    fn palindromic_for_odd_squarefree() {
        for n in [15u64, 105, 165, 195, 1155] {
            let c = cyclotomic(n).coeffs_i64().unwrap();
            let mut r = c.clone();
            r.reverse();
            assert_eq!(c, r, "n = {n}");
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_prefix(3, 6).unwrap().coeffs_i64(), vec![1, -1, 0, 1, -1, 0]);
        assert_eq!(psi_prefix(5, 10).unwrap().coeffs_i64(), vec![1, -1, 0, 0, 0, 1, -1, 0, 0, 0]);
        assert!(psi_prefix(1, 4).is_err());
        for n in 2..60 {
            assert_eq!(psi_prefix(n, 3).unwrap().coeff_i64(0), Some(1));
        }
    }

    #[test]
    fn psi_matches_series_inverse_and_recursion() {
        for n in 2..=300u64 {
            let idx = analyze(n).unwrap();
            let order = 2 * n as usize + 3;
            let psi = psi_prefix(n, order).unwrap();
            assert_eq!(psi, cyclotomic(n).series_inverse(order).unwrap(), "n = {n}");
            assert_eq!(psi, psi_prefix_via_recursion(&idx, order), "n = {n}");
        }
    }

    #[test]
    fn inverse_cyclotomic_examples() {
        for p_ in [2u64, 3, 5, 7, 101] {
            assert_eq!(inverse_cyclotomic(p_).unwrap(), p(&[1, -1]));
        }
        assert_eq!(inverse_cyclotomic(15).unwrap(), p(&[1, 1, 1, 0, 0, -1, -1, -1]));
        let ic6 = inverse_cyclotomic(6).unwrap();
        assert_eq!(ic6, p(&[1, 1, 0, -1, -1]));
        assert_eq!(ic6.mul(&cyclotomic(6)), p(&[1, 0, 0, 0, 0, 0, -1]));
    }

    #[test]
    fn inverse_cyclotomic_three_ways() {
        for n in 2..=200u64 {
            let idx = analyze(n).unwrap();
            let ic = inverse_cyclotomic_of(&idx);
            let one_minus = IntPoly::one().sub(&IntPoly::monomial(1, n as usize));
            assert_eq!(ic, one_minus.div_exact(&cyclotomic(n)).unwrap(), "n = {n}");
            let lower = arith::squarefree_divisors(&[]).len(); // 1
            let prod = (1..n)
                .filter(|d| n % d == 0)
                .fold(IntPoly::from_coeffs(vec![-1]), |acc, d| acc.mul(&cyclotomic(d)));
            assert_eq!(ic, prod, "n = {n}");
            assert_eq!(ic.degree(), Some((n - idx.totient) as usize));
            assert_eq!(lower, 1);
        }
    }

    #[test]
    fn psi_folds_onto_inverse_cyclotomic() {
        for n in 2..=250u64 {
            let ic = inverse_cyclotomic(n).unwrap();
            let order = 3 * n as usize;
            let psi = psi_prefix(n, order).unwrap();
            for m in 0..order {
                assert_eq!(psi.coeff(m), ic.coeff(m % n as usize), "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn psi_recursion_step() {
        // Psi_{np}(x) = Psi_n(x^p) Phi_n(x) for p not dividing n.
        for (n, p_) in [(3u64, 5u64), (15, 7), (5, 3), (21, 11), (2, 3)] {
            let order = (n * p_) as usize * 2;
            let lhs = psi_prefix(n * p_, order).unwrap();
            let inner = psi_prefix(n, order).unwrap().substitute_power(p_ as usize);
            assert_eq!(lhs, inner.mul_poly(&cyclotomic(n)), "n = {n}, p = {p_}");
        }
    }
}
