//! The constants `rho` and `C`, the sequence `e_k` bounding `A_n / M_k`, the
//! chain `e_2 ... e_{k-1}` bounding `C_n / M_k`, and the lower bound on `C`
//! coming from products of consecutive odd primes.
//!
//! `e_k` has exponents of order `2^k` in `eps3` and `d`, so it is carried
//! symbolically as `r * eps3^a * d^b` with `r` factored over the primes.
//! Identities are then checked as equalities of exponent vectors, which is
//! exact and does not depend on the numeric values of `eps3` and `d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::interval::{Interval, PREC};
use super::mk;
use crate::arith;

/// Materialize `e_k` as a rational only below this many estimated bits.
pub const MAX_EXACT_BITS: f64 = 4096.0;

/// Smallest tolerance accepted by the enclosures.
pub fn min_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << (PREC - 64))
}

fn clamp_tol(tol: &BigRational) -> BigRational {
    assert!(tol.is_positive(), "tolerance must be positive");
    tol.max(&min_tolerance()).clone()
}

pub fn tolerance_from_f64(tol: f64) -> BigRational {
    BigRational::from_float(tol).unwrap_or_else(|| BigRational::new(1.into(), 1_000_000_000.into()))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2_inv(i: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << i)
}

/// `eps3 (2 - eps3) / 2`.
pub fn d_upper(eps3: &BigRational) -> BigRational {
    eps3 * (BigRational::from_integer(2.into()) - eps3) / BigRational::from_integer(2.into())
}

/// `ln rho` together with the number of product terms used.
pub fn ln_rho(tol: &BigRational) -> (Interval, u64) {
    let tol = clamp_tol(tol);
    // Tail after index I lies in [-2^-I / (2I + 7), 0].
    let target = &tol / BigRational::from_integer(4.into());
    let mut big_i = 0u64;
    while pow2_inv(big_i) / BigRational::from_integer((2 * big_i + 7).into()) > target {
        big_i += 1;
    }
    let mut acc = Interval::from_int(0);
    for i in 0..=big_i {
        let factor = BigRational::new((2 * i + 5).into(), (2 * i + 6).into());
        acc = acc.add(&Interval::ln(&factor).shr(i));
    }
    let tail = pow2_inv(big_i) / BigRational::from_integer((2 * big_i + 7).into());
    (acc.add(&Interval::from_bounds(&-tail, &BigRational::zero())), big_i)
}

/// `rho = prod_{i >= 0} ((2i + 5)/(2i + 6))^{2^-i}` with width at most `tol`.
pub fn rho_enclosure(tol: &BigRational) -> Interval {
    ln_rho(tol).0.exp()
}

/// `ln C = (ln(3/4) + (3/2) ln eps3 + ln d + (1/4) ln rho) / 32`.
pub fn ln_constant_c(eps3: &BigRational, d: &BigRational, tol: &BigRational) -> Interval {
    let (lr, _) = ln_rho(tol);
    Interval::ln(&rat(3, 4))
        .add(&Interval::ln(eps3).mul_int(&3.into()).shr(1))
        .add(&Interval::ln(d))
        .add(&lr.shr(2))
        .shr(5)
}

/// `C = ((3/4) eps3^{3/2} d rho^{1/4})^{1/32}`.
pub fn constant_c(eps3: &BigRational, d: &BigRational, tol: &BigRational) -> Interval {
    assert!(eps3.is_positive() && eps3 <= &BigRational::one(), "eps3 must lie in (0, 1]");
    assert!(d.is_positive() && d < &BigRational::one(), "d must lie in (0, 1)");
    ln_constant_c(eps3, d, tol).exp()
}

/// `r * eps3^a * d^b` with `r = prod p^{e_p}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicConstant {
    pub primes: BTreeMap<u64, i128>,
    pub eps3: i128,
    pub d: i128,
}

impl SymbolicConstant {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn eps3() -> Self {
        SymbolicConstant { eps3: 1, ..Self::default() }
    }

    pub fn d() -> Self {
        SymbolicConstant { d: 1, ..Self::default() }
    }

    /// `num / den` for positive integers.
    pub fn ratio(num: u64, den: u64) -> Self {
        let mut out = Self::default();
        for (p, e) in arith::factorize(num) {
            *out.primes.entry(p).or_default() += e as i128;
        }
        for (p, e) in arith::factorize(den) {
            *out.primes.entry(p).or_default() -= e as i128;
        }
        out.primes.retain(|_, e| *e != 0);
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut primes = self.primes.clone();
        for (&p, &e) in &o.primes {
            *primes.entry(p).or_default() += e;
        }
        primes.retain(|_, e| *e != 0);
        SymbolicConstant { primes, eps3: self.eps3 + o.eps3, d: self.d + o.d }
    }

    pub fn pow(&self, k: i128) -> Self {
        let mut primes: BTreeMap<u64, i128> = self.primes.iter().map(|(&p, &e)| (p, e * k)).collect();
        primes.retain(|_, e| *e != 0);
        SymbolicConstant { primes, eps3: self.eps3 * k, d: self.d * k }
    }

    fn estimated_bits(&self, eps3: &BigRational, d: &BigRational) -> f64 {
        let bits = |r: &BigRational| (r.numer().bits() + r.denom().bits()) as f64;
        self.primes.iter().map(|(&p, &e)| (e.unsigned_abs() as f64) * (p as f64).log2()).sum::<f64>()
            + self.eps3.unsigned_abs() as f64 * bits(eps3)
            + self.d.unsigned_abs() as f64 * bits(d)
    }

    /// The exact value, or `None` when it would exceed [`MAX_EXACT_BITS`].
    pub fn value(&self, eps3: &BigRational, d: &BigRational) -> Option<BigRational> {
        if self.estimated_bits(eps3, d) > MAX_EXACT_BITS {
            return None;
        }
        let pow = |r: &BigRational, e: i128| -> BigRational {
            let v = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
            if e < 0 {
                v.recip()
            } else {
                v
            }
        };
        let mut out = BigRational::one();
        for (&p, &e) in &self.primes {
            out *= pow(&BigRational::from_integer(p.into()), e);
        }
        Some(out * pow(eps3, self.eps3) * pow(d, self.d))
    }

    pub fn ln(&self, eps3: &BigRational, d: &BigRational) -> Interval {
        let mut acc = Interval::from_int(0);
        for (&p, &e) in &self.primes {
            acc = acc.add(&Interval::ln(&BigRational::from_integer(p.into())).mul_int(&e.into()));
        }
        acc.add(&Interval::ln(eps3).mul_int(&self.eps3.into()))
            .add(&Interval::ln(d).mul_int(&self.d.into()))
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.primes.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        if self.eps3 != 0 {
            parts.push(format!("eps3^{}", self.eps3));
        }
        if self.d != 0 {
            parts.push(format!("d^{}", self.d));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

fn b(t: u64) -> u64 {
    arith::sperner_bound(t).to_u64().expect("central binomials used here fit u64")
}

/// `b_{i-2} b_{i-4} / b_{i-3}^2`.
pub fn binomial_ratio(i: u64) -> SymbolicConstant {
    SymbolicConstant::ratio(b(i - 2), 1)
        .mul(&SymbolicConstant::ratio(b(i - 4), 1))
        .mul(&SymbolicConstant::ratio(1, b(i - 3)).pow(2))
}

/// `e_1, ..., e_kmax` from the product formula (index 0 holds `e_1`).
pub fn e_symbolic(kmax: u64) -> Vec<SymbolicConstant> {
    let mut e: Vec<SymbolicConstant> = Vec::new();
    for k in 1..=kmax {
        let next = match k {
            1 | 2 => SymbolicConstant::one(),
            3 | 4 => SymbolicConstant::eps3(),
            _ => {
                let mut acc = SymbolicConstant::ratio(b(k - 2), 1)
                    .mul(&SymbolicConstant::d().pow((k - 4) as i128))
                    .mul(&SymbolicConstant::ratio(1, 2).pow((k - 3) as i128));
                for j in 1..=k - 2 {
                    acc = acc.mul(&e[(j - 1) as usize].pow((k - j - 1) as i128));
                }
                acc
            }
        };
        e.push(next);
    }
    e
}

/// `e_2 ... e_{k-1}` for `k = 1..=kmax` (index 0 holds `k = 1`).
pub fn inv_chain_symbolic(e: &[SymbolicConstant]) -> Vec<SymbolicConstant> {
    (1..=e.len())
        .map(|k| (2..k).fold(SymbolicConstant::one(), |acc, j| acc.mul(&e[j - 1])))
        .collect()
}

/// Printed constants for the two standard parameter choices, keyed by `k`.
type Table = &'static [(u64, i64, i64)];

fn printed(eps3: &BigRational, d: &BigRational) -> Option<(Table, Table)> {
    const E_34: &[(u64, i64, i64)] = &[(4, 3, 4), (5, 135, 512), (6, 18225, 262144)];
    const INV_34: &[(u64, i64, i64)] = &[(4, 3, 4), (5, 9, 16), (6, 10935, 131072)];
    const E_23: &[(u64, i64, i64)] = &[(4, 2, 3), (5, 2, 9), (6, 32, 729)];
    const INV_23: &[(u64, i64, i64)] = &[(4, 2, 3), (5, 4, 9), (6, 8, 81)];
    if *eps3 == rat(3, 4) && *d == rat(15, 32) {
        Some((E_34, INV_34))
    } else if *eps3 == rat(2, 3) && *d == rat(4, 9) {
        Some((E_23, INV_23))
    } else {
        None
    }
}

fn lookup(table: &[(u64, i64, i64)], k: u64) -> Option<BigRational> {
    table.iter().find(|t| t.0 == k).map(|&(_, n, d)| rat(n, d))
}

/// An enclosure rendered as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub lo: String,
    pub hi: String,
}

impl IntervalReport {
    pub fn new(i: &Interval, digits: u32) -> Self {
        let (lo, hi) = i.to_decimal(digits);
        IntervalReport { lo, hi }
    }
}

fn rat_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EEntry {
    pub k: u64,
    pub factored: String,
    pub exact: Option<String>,
    /// `ln(e_k) / 2^k`.
    pub log_over_2k: IntervalReport,
    pub printed: Option<String>,
    pub matches_printed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ESequenceReport {
    pub e: Vec<EEntry>,
    /// The bound `E_k` evaluated with `e_j` in place of `eps_j`, `k >= 5`.
    #[serde(rename = "E")]
    pub big_e: Vec<EEntry>,
    /// `e_k = e_{k-1}^2 b_{k-2} b_{k-4} / b_{k-3}^2` for `7 <= k <= kmax`.
    pub recursion_holds: bool,
    /// The binomial ratio equals `(i-2)/(i-1)` for odd `i`, `(i-2)/(i-3)` for even `i`.
    pub ratio_identity_holds: bool,
    /// `ln(e_k)/2^k` is monotone for `k >= 5`.
    pub trend_monotone: bool,
    /// `lim ln(e_k)/2^k = ln(e_6)/64 + sum_{i >= 7} 2^-i ln(ratio_i)`.
    pub log_limit: IntervalReport,
    pub log_c: IntervalReport,
    pub limit_meets_log_c: bool,
    /// `e_6` as given by the proof line `(9/16) eps3^3 d^2`.
    pub e6_proof_line: Option<String>,
}

pub struct ESequence {
    pub e: Vec<SymbolicConstant>,
    pub report: ESequenceReport,
    pub log_over_2k: Vec<Interval>,
    pub log_limit: Interval,
    pub log_c: Interval,
}

fn e_entry(k: u64, s: &SymbolicConstant, eps3: &BigRational, d: &BigRational, digits: u32, printed: Option<BigRational>) -> (EEntry, Interval) {
    let value = s.value(eps3, d);
    let log = s.ln(eps3, d).shr(k);
    let matches = match (&printed, &value) {
        (Some(p), Some(v)) => Some(p == v),
        _ => None,
    };
    (
        EEntry {
            k,
            factored: s.to_string(),
            exact: value.as_ref().map(rat_str),
            log_over_2k: IntervalReport::new(&log, digits),
            printed: printed.as_ref().map(rat_str),
            matches_printed: matches,
        },
        log,
    )
}

pub fn e_sequence(kmax: u64, eps3: &BigRational, d: &BigRational, tol: &BigRational, digits: u32) -> ESequence {
    assert!(kmax >= 6, "kmax must be at least 6");
    let e = e_symbolic(kmax);
    let table = printed(eps3, d).map(|t| t.0);
    let mut entries = Vec::new();
    let mut logs = Vec::new();
    for k in 1..=kmax {
        let p = table.and_then(|t| lookup(t, k));
        let (entry, log) = e_entry(k, &e[(k - 1) as usize], eps3, d, digits, p);
        entries.push(entry);
        logs.push(log);
    }
    let big_e: Vec<EEntry> = (5..=kmax)
        .map(|k| {
            let mut acc = SymbolicConstant::ratio(b(k - 2), 1)
                .mul(&SymbolicConstant::d().pow((k - 4) as i128))
                .mul(&SymbolicConstant::ratio(1, 2).pow((k - 3) as i128));
            for j in 1..=k - 2 {
                acc = acc.mul(&e[(j - 1) as usize].pow((k - j - 1) as i128));
            }
            e_entry(k, &acc, eps3, d, digits, None).0
        })
        .collect();

    let recursion_holds = (7..=kmax).all(|k| {
        e[(k - 1) as usize] == e[(k - 2) as usize].pow(2).mul(&binomial_ratio(k))
    });
    let ratio_identity_holds = (7..=kmax.max(40)).all(|i| {
        let want = if i % 2 == 1 { SymbolicConstant::ratio(i - 2, i - 1) } else { SymbolicConstant::ratio(i - 2, i - 3) };
        binomial_ratio(i) == want
    });
    let tail_logs = &logs[4..];
    let trend_monotone = tail_logs.windows(2).all(|w| w[1].lt(&w[0])) || tail_logs.windows(2).all(|w| w[0].lt(&w[1]));

    // ln(e_k)/2^k = ln(e_6)/64 + sum_{i=7}^k 2^-i ln r_i, and |ln r_i| <= 1/(i-3).
    let tol = clamp_tol(tol);
    let mut big_i = 7u64;
    while pow2_inv(big_i) / BigRational::from_integer((big_i - 2).into()) > &tol / BigRational::from_integer(4.into()) {
        big_i += 1;
    }
    let mut limit = logs[5].clone();
    for i in 7..=big_i {
        let r = if i % 2 == 1 { rat(i as i64 - 2, i as i64 - 1) } else { rat(i as i64 - 2, i as i64 - 3) };
        limit = limit.add(&Interval::ln(&r).shr(i));
    }
    let tail = pow2_inv(big_i) / BigRational::from_integer((big_i - 2).into());
    let limit = limit.add(&Interval::from_bounds(&-tail.clone(), &tail));
    let log_c = ln_constant_c(eps3, d, &tol);
    let limit_meets_log_c = !(limit.lt(&log_c) || log_c.lt(&limit));

    let e6_proof_line = SymbolicConstant::ratio(9, 16)
        .mul(&SymbolicConstant::eps3().pow(3))
        .mul(&SymbolicConstant::d().pow(2))
        .value(eps3, d)
        .map(|v| rat_str(&v));

    let report = ESequenceReport {
        e: entries,
        big_e,
        recursion_holds,
        ratio_identity_holds,
        trend_monotone,
        log_limit: IntervalReport::new(&limit, digits),
        log_c: IntervalReport::new(&log_c, digits),
        limit_meets_log_c,
        e6_proof_line,
    };
    ESequence { e, report, log_over_2k: logs, log_limit: limit, log_c }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvChainEntry {
    pub k: u64,
    pub factored: String,
    pub exact: Option<String>,
    /// `(b_{k-2}/b_{k-3}) e_k`, the closed form claimed for the chain (`k >= 6`).
    pub closed_form: Option<String>,
    pub closed_form_holds: Option<bool>,
    /// The constant obtained from the stated bounds `eps3`, `eps3^2`, `(3/4) eps3^3 d`.
    pub text_formula: Option<String>,
    pub printed: Option<String>,
    pub matches_printed: Option<bool>,
}

/// `e_2 ... e_{k-1}` for `4 <= k <= kmax`, with the closed form and printed values.
pub fn inv_epsilon_chain(kmax: u64, eps3: &BigRational, d: &BigRational) -> Vec<InvChainEntry> {
    assert!(kmax >= 4, "kmax must be at least 4");
    let e = e_symbolic(kmax);
    let chain = inv_chain_symbolic(&e);
    let table = printed(eps3, d).map(|t| t.1);
    (4..=kmax)
        .map(|k| {
            let c = &chain[(k - 1) as usize];
            let value = c.value(eps3, d);
            let closed = (k >= 6).then(|| SymbolicConstant::ratio(b(k - 2), b(k - 3)).mul(&e[(k - 1) as usize]));
            let text = match k {
                4 => Some(eps3.clone()),
                5 => Some(eps3 * eps3),
                6 => Some(rat(3, 4) * eps3 * eps3 * eps3 * d),
                _ => None,
            };
            let printed = table.and_then(|t| lookup(t, k));
            InvChainEntry {
                k,
                factored: c.to_string(),
                exact: value.as_ref().map(rat_str),
                closed_form: closed.as_ref().map(|s| s.value(eps3, d).map(|v| rat_str(&v)).unwrap_or_else(|| s.to_string())),
                closed_form_holds: closed.as_ref().map(|s| s == c),
                text_formula: text.as_ref().map(rat_str),
                matches_printed: match (&printed, &value) {
                    (Some(p), Some(v)) => Some(p == v),
                    _ => None,
                },
                printed: printed.as_ref().map(rat_str),
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct LowerBound {
    /// `M_k^{-1/2^k}` for `k = 1..=kmax`, `p_j` the `j`-th odd prime.
    pub sequence: Vec<Interval>,
    /// `M_{k+1} >= M_k^2` for all `k < kmax`, checked on exponents.
    pub decreasing: bool,
    /// `prod_{j >= 1} p_j^{-2^{-j-1}}`.
    pub limit: Interval,
    pub primes_used: usize,
}

pub fn lower_bound_c(kmax: u64, tol: &BigRational) -> LowerBound {
    assert!(kmax >= 5, "kmax must be at least 5");
    let tol = clamp_tol(tol);
    // Tail sum_{j > J} 2^{-j-1} ln p_j <= ln 2 (J + 3) / 2^{J+1}, using p_j <= 2^{j+1}.
    let ln2_hi = rat(7, 10);
    let mut j_max = 1u64;
    while &ln2_hi * BigRational::from_integer((j_max + 3).into()) * pow2_inv(j_max + 1) > &tol / BigRational::from_integer(4.into()) {
        j_max += 1;
    }
    let count = j_max.max(kmax) as usize;
    let primes = arith::odd_primes(count);
    let logs: Vec<Interval> = primes.iter().map(|&p| Interval::ln(&BigRational::from_integer(p.into()))).collect();

    let sequence = (1..=kmax)
        .map(|k| {
            let mut acc = Interval::from_int(0);
            for i in 1..=k.saturating_sub(2) {
                let e = (BigInt::one() << (k - i - 1)) - 1;
                acc = acc.add(&logs[(i - 1) as usize].mul_int(&e));
            }
            acc.shr(k).neg().exp()
        })
        .collect();

    // M_{k+1} / M_k^2 = p_{k-1} prod_{i <= k-2} p_i has nonnegative exponents.
    let decreasing = (1..kmax).all(|k| {
        let exps = |kk: u64, i: u64| -> i128 { if kk >= 2 && i <= kk - 2 { (1i128 << (kk - i - 1)) - 1 } else { 0 } };
        (1..=k).all(|i| exps(k + 1, i) - 2 * exps(k, i) >= 0)
    });

    let mut s = Interval::from_int(0);
    for j in 1..=j_max {
        s = s.add(&logs[(j - 1) as usize].shr(j + 1));
    }
    let tail = &ln2_hi * BigRational::from_integer((j_max + 3).into()) * pow2_inv(j_max + 1);
    let ln_limit = s.neg().add(&Interval::from_bounds(&-tail, &BigRational::zero()));
    LowerBound { sequence, decreasing, limit: ln_limit.exp(), primes_used: j_max as usize }
}

/// `M_k` for the first `k` odd primes, `k = 1..=kmax`.
pub fn mk_samples(kmax: usize) -> Vec<(Vec<u64>, BigUint)> {
    let ps = arith::odd_primes(kmax);
    (1..=kmax).map(|k| (ps[..k].to_vec(), mk(&ps[..k]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol(n: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(10u32).pow(n))
    }

    #[test]
    fn rho_value_and_nesting() {
        let r = rho_enclosure(&tol(9));
        assert!(r.width_rational() <= tol(9));
        let tight = rho_enclosure(&tol(15));
        assert!((tight.mid_f64() - 0.744_842_328_430_29).abs() < 1e-13, "{tight:?}");
        assert!(r.hi_rational() <= rat(5, 6));
        let coarse = rho_enclosure(&tol(3));
        let fine = rho_enclosure(&tol(12));
        assert!(fine.is_subset_of(&r) && r.is_subset_of(&coarse));
    }

    #[test]
    fn constant_c_values() {
        let c = constant_c(&rat(3, 4), &rat(15, 32), &tol(9));
        assert!(c.meets_ball(&rat(953, 1000), &rat(1, 1000)), "{c:?}");
        let c2 = constant_c(&rat(2, 3), &rat(4, 9), &tol(9));
        assert!(c2.meets_ball(&rat(946, 1000), &rat(1, 1000)), "{c2:?}");
        let smaller = constant_c(&rat(3, 4), &rat(14, 32), &tol(9));
        assert!(smaller.lt(&c));
    }

    #[test]
    fn e_sequence_values() {
        let (eps3, d) = (rat(3, 4), rat(15, 32));
        let e = e_symbolic(8);
        let vals: Vec<BigRational> = e.iter().map(|s| s.value(&eps3, &d).unwrap()).collect();
        assert_eq!(vals[0], BigRational::one());
        assert_eq!(vals[1], BigRational::one());
        assert_eq!(vals[2], eps3);
        assert_eq!(vals[3], eps3);
        assert_eq!(vals[4], rat(135, 512));
        assert_eq!(vals[5], rat(18225, 262144));
        assert_eq!(vals[6], rat(553584375, 137438953472));
        let e23 = e_symbolic(6);
        assert_eq!(e23[4].value(&rat(2, 3), &rat(4, 9)).unwrap(), rat(2, 9));
        assert_eq!(e23[5].value(&rat(2, 3), &rat(4, 9)).unwrap(), rat(32, 729));
    }

    #[test]
    fn e_recursion_to_forty() {
        let s = e_sequence(40, &rat(3, 4), &rat(15, 32), &tol(9), 12);
        assert!(s.report.recursion_holds);
        assert!(s.report.ratio_identity_holds);
        assert_eq!(s.report.e6_proof_line.as_deref(), Some("54675/1048576"));
        assert!(s.e[39].eps3 > 1 << 30);
    }

    #[test]
    fn inverse_chain() {
        let c = inv_epsilon_chain(8, &rat(3, 4), &rat(15, 32));
        let exact: Vec<_> = c.iter().map(|x| x.exact.clone().unwrap()).collect();
        assert_eq!(&exact[..3], &["3/4", "9/16", "1215/8192"]);
        assert_eq!(c[2].matches_printed, Some(false));
        assert_eq!(c[2].text_formula.as_deref(), Some("1215/8192"));
        let c = inv_epsilon_chain(6, &rat(2, 3), &rat(4, 9));
        let exact: Vec<_> = c.iter().map(|x| x.exact.clone().unwrap()).collect();
        assert_eq!(exact, ["2/3", "4/9", "8/81"]);
        assert!(c.iter().all(|x| x.matches_printed == Some(true)));
    }

    #[test]
    fn lower_bound() {
        let lb = lower_bound_c(20, &tol(9));
        assert!(lb.decreasing);
        assert!(lb.limit.meets_ball(&rat(468, 1000), &rat(5, 1000)), "{:?}", lb.limit);
        assert!(lb.limit.hi_f64() < 3f64.powf(-0.25));
        for w in lb.sequence[2..].windows(2) {
            assert!(w[1].hi_rational() <= w[0].hi_rational());
        }
        assert!(lb.limit.hi_rational() <= lb.sequence[19].hi_rational());
    }

    #[test]
    fn mk_sample_values() {
        let s = mk_samples(4);
        assert_eq!(s[2].1, BigUint::from(3u32));
        assert_eq!(s[3].1, BigUint::from(135u32));
    }
}
