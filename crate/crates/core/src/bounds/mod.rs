//! Checks of the known coefficient bounds against computed heights, and the
//! constants those bounds are built from.

pub mod constants;
pub mod interval;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith;
use crate::cyclo::{self, CyclotomicIndex};
use crate::error::{Error, Result};
use crate::heights::{self, HeightRecord};
use crate::par::{self, Jobs};

pub use constants::{
    constant_c, d_upper, e_sequence, inv_epsilon_chain, lower_bound_c, rho_enclosure, ESequence,
    IntervalReport, LowerBound,
};
pub use interval::Interval;

/// `M_k = prod_{i=1}^{k-2} p_i^{2^{k-i-1} - 1}` for ascending primes.
pub fn mk(primes: &[u64]) -> BigUint {
    let k = primes.len();
    (1..=k.saturating_sub(2))
        .map(|i| BigUint::from(primes[i - 1]).pow((1u32 << (k - i - 1)) - 1))
        .product()
}

fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn int(x: u64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// One inequality (or equality) evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub satisfied: bool,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl BoundCheck {
    fn le(name: &'static str, lhs: BigRational, rhs: BigRational) -> Self {
        BoundCheck { name, satisfied: lhs <= rhs, lhs, rhs }
    }

    fn eq(name: &'static str, lhs: BigRational, rhs: BigRational) -> Self {
        BoundCheck { name, satisfied: lhs == rhs, lhs, rhs }
    }

    pub fn slack(&self) -> BigRational {
        &self.rhs - &self.lhs
    }
}

/// Every applicable bound for a record of odd squarefree `n`; empty otherwise.
///
/// For `k >= 4` the bounds are `A_n <= e_k M_k` and `C_n <= e_2 ... e_{k-1} M_k`
/// with `d = eps3 (2 - eps3)/2`.
pub fn check_small_orders(record: &HeightRecord, eps3: &BigRational) -> Vec<BoundCheck> {
    let index = cyclo::analyze(record.n).expect("record index is positive");
    if !index.is_odd_squarefree() {
        return Vec::new();
    }
    let ps = &index.primes;
    let a = big(&record.a);
    let s = big(&record.s);
    let c = record.c.as_ref().map(big);
    let mut out = Vec::new();
    match index.omega {
        0 => {}
        1 => {
            out.push(BoundCheck::eq("A_p = 1", a, BigRational::one()));
            out.extend(c.map(|c| BoundCheck::eq("C_p = 1", c, BigRational::one())));
        }
        2 => {
            out.push(BoundCheck::eq("A_pq = 1", a, BigRational::one()));
            out.extend(c.map(|c| BoundCheck::eq("C_pq = 1", c, BigRational::one())));
            out.push(BoundCheck::le("S_pq <= pq/2", s, int(record.n) / int(2)));
        }
        3 => {
            let (p, q, r) = (ps[0], ps[1], ps[2]);
            out.push(BoundCheck::le("A_pqr <= eps3 p", a, eps3 * int(p)));
            out.extend(c.map(|c| BoundCheck::le("C_pqr <= p - 1", c, int(p - 1))));
            let rhs = d_upper(eps3) * int(p * p) * int(q) * int(r);
            out.push(BoundCheck::le("S_pqr <= d p^2 q r", s, rhs));
        }
        k => {
            let d = d_upper(eps3);
            let e = constants::e_symbolic(k as u64);
            let chain = constants::inv_chain_symbolic(&e);
            let m = big(&mk(ps));
            let ek = e[k - 1].value(eps3, &d).expect("e_k is small for n < 2^64");
            let ck = chain[k - 1].value(eps3, &d).expect("chain is small for n < 2^64");
            out.push(BoundCheck::le("A <= e_k M_k", a, ek * &m));
            out.extend(c.map(|c| BoundCheck::le("C <= e_2...e_{k-1} M_k", c, ck * m)));
        }
    }
    out
}

/// Pointwise data for `n = pqr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BloomPoint {
    pub m: usize,
    pub value: i64,
    pub mirror: i64,
    pub bound: i64,
    pub symmetric: bool,
    pub within_bound: bool,
}

impl BloomPoint {
    pub fn ok(&self) -> bool {
        self.symmetric && self.within_bound
    }
}

/// `|a(m)| = |a(phi - m)| <= 2 (floor(m/qr) + 1)` for ternary `n = pqr`.
#[derive(Clone, Debug)]
pub struct BloomChecker {
    coeffs: Vec<i64>,
    qr: usize,
}

impl BloomChecker {
    pub fn new(index: &CyclotomicIndex) -> Result<Self> {
        if !index.is_odd_squarefree() || index.omega != 3 {
            return Err(Error::NotAdmissible { n: index.n, reason: "needs n = pqr with odd primes".into() });
        }
        let coeffs = cyclo::cyclotomic_of(index).coeffs_i64().expect("ternary coefficients are small");
        Ok(BloomChecker { coeffs, qr: (index.n / index.primes[0]) as usize })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn check(&self, m: usize) -> BloomPoint {
        let phi = self.degree();
        let value = self.coeffs.get(m).copied().unwrap_or(0);
        let mirror = if m <= phi { self.coeffs[phi - m] } else { 0 };
        let bound = 2 * ((m / self.qr) as i64 + 1);
        BloomPoint {
            m,
            value,
            mirror,
            bound,
            symmetric: value.abs() == mirror.abs(),
            within_bound: value.abs() <= bound,
        }
    }

    /// Points in `[0, phi]` where either check fails.
    pub fn failures(&self) -> Vec<BloomPoint> {
        (0..=self.degree()).map(|m| self.check(m)).filter(|b| !b.ok()).collect()
    }
}

pub fn bloom_pointwise(index: &CyclotomicIndex, m: usize) -> Result<BloomPoint> {
    Ok(BloomChecker::new(index)?.check(m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalD {
    pub value: BigRational,
    pub witness: (u64, u64, u64),
    pub triples: usize,
}

/// `max S_pqr / (p^2 q r)` over odd primes `p < q < r <= prime_bound`; ties go
/// to the lexicographically smallest triple.
pub fn empirical_d(prime_bound: u64, jobs: Jobs) -> Result<EmpiricalD> {
    if prime_bound < 7 {
        return Err(Error::NotAdmissible { n: prime_bound, reason: "prime box needs a bound of at least 7".into() });
    }
    let ps: Vec<u64> = arith::primes_up_to(prime_bound).into_iter().filter(|&p| p > 2).collect();
    let mut triples = Vec::new();
    for (i, &p) in ps.iter().enumerate() {
        for (j, &q) in ps.iter().enumerate().skip(i + 1) {
            for &r in &ps[j + 1..] {
                triples.push((p, q, r));
            }
        }
    }
    let ratios = par::map(jobs, triples.clone(), |(p, q, r)| {
        let s = heights::heights_of(p * q * r).expect("positive").s;
        big(&s) / (int(p * p) * int(q) * int(r))
    });
    let mut best: Option<(BigRational, (u64, u64, u64))> = None;
    for (t, v) in triples.iter().zip(ratios) {
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, *t));
        }
    }
    let (value, witness) = best.expect("at least one triple");
    Ok(EmpiricalD { value, witness, triples: triples.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiCheck {
    pub ok: bool,
    /// `M_k^k`.
    pub lhs: BigUint,
    /// `phi(n)^{2^{k-1} - k}`.
    pub rhs: BigUint,
}

/// `M_k <= phi(n)^{2^{k-1}/k - 1}`, compared as `M_k^k <= phi(n)^{2^{k-1} - k}`.
pub fn theorem_phi_check(primes: &[u64]) -> Result<PhiCheck> {
    if primes.is_empty() || primes.windows(2).any(|w| w[0] >= w[1]) || !primes.iter().all(|&p| arith::is_prime(p)) {
        return Err(Error::NotAdmissible { n: 0, reason: "need distinct ascending primes".into() });
    }
    let k = primes.len() as u32;
    let phi: BigUint = primes.iter().map(|&p| BigUint::from(p - 1)).product();
    let lhs = mk(primes).pow(k);
    let rhs = phi.pow((1u32 << (k - 1)) - k);
    Ok(PhiCheck { ok: lhs <= rhs, lhs, rhs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct KaplanReport {
    pub n: u64,
    pub k: usize,
    pub b: BigUint,
    /// `prod_{j=1}^{k-1} p_j^{4 * 3^{k-2} - 1}` for `k >= 2`.
    pub kaplan_bound: Option<BigUint>,
    pub holds: Option<bool>,
    /// `B_n / n^{(3^k - 1)/(2k) - 1}`.
    pub eta_observed: f64,
    pub eta_exponent: BigRational,
}

pub fn kaplan_compare(record: &HeightRecord) -> Result<KaplanReport> {
    let index = cyclo::analyze(record.n)?;
    let b = record
        .b
        .clone()
        .ok_or_else(|| Error::NotAdmissible { n: record.n, reason: "record carries no B_n".into() })?;
    let k = index.omega;
    let kaplan_bound = (k >= 2).then(|| {
        let e = 4 * 3u32.pow(k as u32 - 2) - 1;
        index.primes[..k - 1].iter().map(|&p| BigUint::from(p).pow(e)).product::<BigUint>()
    });
    let holds = kaplan_bound.as_ref().map(|kb| &b < kb);
    let eta_exponent = BigRational::new((3i64.pow(k as u32) - 1).into(), (2 * k.max(1) as i64).into()) - BigRational::one();
    let eta_exponent = if k == 0 { BigRational::zero() } else { eta_exponent };
    let ln_b = b.to_f64().unwrap_or(f64::INFINITY).ln();
    let eta_observed = (ln_b - eta_exponent.to_f64().unwrap_or(0.0) * (record.n as f64).ln()).exp();
    Ok(KaplanReport { n: record.n, k, b, kaplan_bound, holds, eta_observed, eta_exponent })
}

/// `(1/n) prod_{d | n} d = n^{2^{k-1} - 1}` for squarefree `n` with `k >= 1` primes.
pub fn divisor_product_identity(index: &CyclotomicIndex) -> bool {
    if !index.squarefree || index.omega == 0 {
        return true;
    }
    let prod: BigUint = arith::squarefree_divisors(&index.primes).iter().map(|&d| BigUint::from(d)).product();
    let n = BigUint::from(index.n);
    prod == n.pow(1u32 << (index.omega - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::heights_of;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mk_values() {
        assert_eq!(mk(&[3, 5]), BigUint::one());
        assert_eq!(mk(&[3, 5, 7]), BigUint::from(3u32));
        assert_eq!(mk(&[3, 5, 7, 11]), BigUint::from(135u32));
        assert_eq!(mk(&[]), BigUint::one());
    }

    #[test]
    fn small_order_examples() {
        let r = heights_of(105).unwrap();
        let checks = check_small_orders(&r, &q(3, 4));
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.satisfied), "{checks:?}");
        assert_eq!(checks[0].rhs, q(9, 4));
        assert_eq!(checks[1].rhs, q(2, 1));
        let r = heights_of(15).unwrap();
        let checks = check_small_orders(&r, &q(3, 4));
        assert!(checks.iter().all(|c| c.satisfied));
        assert_eq!(checks[0].lhs, q(1, 1));
        let r = heights_of(1155).unwrap();
        let checks = check_small_orders(&r, &q(3, 4));
        assert!(checks.iter().all(|c| c.satisfied), "{checks:?}");
        assert_eq!(checks[0].rhs, q(405, 4));
        assert!(check_small_orders(&heights_of(12).unwrap(), &q(3, 4)).is_empty());
    }

    #[test]
    fn bloom_examples() {
        let idx = cyclo::analyze(105).unwrap();
        let b = BloomChecker::new(&idx).unwrap();
        let p7 = b.check(7);
        assert_eq!((p7.value.abs(), p7.bound, p7.ok()), (2, 2, true));
        assert_eq!(b.check(0).value, 1);
        assert!(b.failures().is_empty());
        assert!(BloomChecker::new(&cyclo::analyze(1155).unwrap()).is_err());
    }

    #[test]
    fn empirical_d_small_box() {
        let e = empirical_d(7, Jobs::SEQUENTIAL).unwrap();
        assert_eq!((e.value.clone(), e.witness), (q(1, 9), (3, 5, 7)));
        let e = empirical_d(31, Jobs(None)).unwrap();
        assert!(e.value <= q(15, 32) && e.value > q(0, 1));
        assert_eq!(e, empirical_d(31, Jobs::SEQUENTIAL).unwrap());
        assert!(empirical_d(5, Jobs::SEQUENTIAL).is_err());
    }

    #[test]
    fn phi_theorem_examples() {
        let c = theorem_phi_check(&[3, 5, 7]).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone(), c.ok), (BigUint::from(27u32), BigUint::from(48u32), true));
        let c = theorem_phi_check(&[3, 5, 7, 11]).unwrap();
        assert_eq!(c.lhs, BigUint::from(135u32).pow(4));
        assert_eq!(c.rhs, BigUint::from(480u32).pow(4));
        assert!(theorem_phi_check(&[13]).unwrap().ok);
        assert!(theorem_phi_check(&[5, 3]).is_err());
    }

    #[test]
    fn kaplan_examples() {
        let mut r = heights_of(15).unwrap();
        r.b = Some(BigUint::from(3u32));
        let k = kaplan_compare(&r).unwrap();
        assert_eq!(k.kaplan_bound, Some(BigUint::from(27u32)));
        assert_eq!(k.holds, Some(true));
        assert_eq!(k.eta_exponent, q(1, 1));
        assert!((k.eta_observed - 0.2).abs() < 1e-12);
        let mut r = heights_of(7).unwrap();
        r.b = Some(BigUint::one());
        let k = kaplan_compare(&r).unwrap();
        assert_eq!((k.kaplan_bound.clone(), k.eta_exponent.clone()), (None, q(0, 1)));
        assert!((k.eta_observed - 1.0).abs() < 1e-12);
    }

    #[test]
    fn divisor_products() {
        for n in [1u64, 2, 6, 30, 105, 2310] {
            assert!(divisor_product_identity(&cyclo::analyze(n).unwrap()));
        }
    }
}
