//! The factorization `Phi_n = f * prod P_j` for odd squarefree `n` with at
//! least three prime factors, the coefficients `d_m` of `f* = f mod x^n`
//! as signed sums of semigroup indicators, and the maximal-lambda count
//! bounding `|d_m|`.

use num_bigint::BigUint;

use crate::arith;
use crate::cyclo::{self, CyclotomicIndex};
use crate::error::{Error, Result};
use crate::polyring::{BinomialQuotient, IntPoly, SeriesPrefix};

fn require_admissible(index: &CyclotomicIndex, min_omega: usize) -> Result<()> {
    let reason = if !index.odd {
        "n must be odd"
    } else if !index.squarefree {
        "n must be squarefree"
    } else if index.omega < min_omega {
        if min_omega == 3 {
            "n needs at least three prime factors"
        } else {
            "n needs at least two prime factors"
        }
    } else {
        return Ok(());
    };
    Err(Error::NotAdmissible { n: index.n, reason: reason.into() })
}

#[derive(Clone, Debug)]
pub struct DecompParts {
    pub index: CyclotomicIndex,
    /// `f mod x^n`.
    pub fstar: IntPoly,
    /// `P_1, ..., P_{k-2}`.
    pub parts: Vec<IntPoly>,
    /// `b_{k-2}`.
    pub sperner: BigUint,
    part_factors: Vec<BinomialQuotient>,
}

/// Outcome of checking one decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompCheck {
    pub congruence: bool,
    pub fstar_height: BigUint,
    pub sperner: BigUint,
}

impl DecompCheck {
    pub fn ok(&self) -> bool {
        self.congruence && self.fstar_height <= self.sperner
    }
}

/// `f` without the factor `1 - x^n`, which is `1` modulo `x^n`.
pub fn f_factors(index: &CyclotomicIndex) -> BinomialQuotient {
    let n = index.n as usize;
    let p1 = index.primes[0] as usize;
    let num = index.primes[1..].iter().map(|&p| n / (p1 * p as usize)).collect();
    let den = index.primes.iter().map(|&p| n / p as usize).collect();
    BinomialQuotient::new(false, num, den)
}

/// `P_j` for `j = 1..=k-2` as binomial quotients.
pub fn part_factors(index: &CyclotomicIndex) -> Vec<BinomialQuotient> {
    let p = &index.primes;
    let k = p.len();
    (1..=k - 2)
        .map(|j| {
            let inner = CyclotomicIndex::from_primes(&p[..j]).expect("distinct primes");
            let phi = cyclo::cyclotomic_factors(&inner);
            let tail: u64 = p[j + 1..].iter().product();
            p[j + 1..]
                .iter()
                .fold(BinomialQuotient::one(), |acc, &pi| acc.mul(&phi.dilate((tail / pi) as usize)))
        })
        .collect()
}

pub fn build_decomposition(index: &CyclotomicIndex) -> Result<DecompParts> {
    require_admissible(index, 3)?;
    let fstar = f_factors(index).expand(index.n as usize).to_poly();
    let part_factors = part_factors(index);
    let parts = part_factors
        .iter()
        .map(|q| q.to_poly(q.degree_if_polynomial() as usize))
        .collect();
    Ok(DecompParts {
        index: index.clone(),
        fstar,
        parts,
        sperner: arith::sperner_bound(index.omega as u64 - 2),
        part_factors,
    })
}

impl DecompParts {
    /// `fstar * prod P_j mod x^n`, by one linear pass per binomial.
    pub fn product_mod_xn(&self) -> SeriesPrefix {
        let n = self.index.n as usize;
        self.part_factors
            .iter()
            .fold(self.fstar.to_series(n), |acc, q| q.apply_to(&acc))
    }

    pub fn check(&self) -> DecompCheck {
        let n = self.index.n as usize;
        let phi = cyclo::cyclotomic_of(&self.index).to_series(n);
        DecompCheck {
            congruence: self.product_mod_xn() == phi,
            fstar_height: self.fstar.height(),
            sperner: self.sperner.clone(),
        }
    }
}

/// Membership in the numerical semigroup generated by `n/p_1, ..., n/p_k`.
#[derive(Clone, Debug)]
pub struct SemigroupTable {
    index: CyclotomicIndex,
    bits: Vec<u64>,
    /// `(n/p_i)^{-1} mod p_i`.
    inverses: Vec<u64>,
}

impl SemigroupTable {
    pub fn new(index: &CyclotomicIndex) -> Result<Self> {
        require_admissible(index, 2)?;
        let n = index.n as usize;
        let gens: Vec<usize> = index.primes.iter().map(|&p| n / p as usize).collect();
        let mut bits = vec![0u64; n.div_ceil(64)];
        bits[0] = 1;
        for m in 1..n {
            if gens.iter().any(|&g| g <= m && bits[(m - g) / 64] >> ((m - g) % 64) & 1 == 1) {
                bits[m / 64] |= 1 << (m % 64);
            }
        }
        let inverses = index
            .primes
            .iter()
            .map(|&p| arith::mod_inverse((index.n / p) % p, p).expect("n/p is prime to p"))
            .collect();
        Ok(SemigroupTable { index: index.clone(), bits, inverses })
    }

    pub fn index(&self) -> &CyclotomicIndex {
        &self.index
    }

    /// The least representable integer congruent to `r` modulo `n`.
    pub fn least_in_class(&self, r: u64) -> u64 {
        let n = self.index.n;
        self.index
            .primes
            .iter()
            .zip(&self.inverses)
            .map(|(&p, &inv)| ((r % p) * inv % p) * (n / p))
            .sum()
    }

    pub fn chi(&self, m: i64) -> u8 {
        if m < 0 {
            return 0;
        }
        let m = m as u64;
        if m < self.index.n {
            (self.bits[(m / 64) as usize] >> (m % 64) & 1) as u8
        } else {
            u8::from(m >= self.least_in_class(m % self.index.n))
        }
    }

    /// `d_m = sum_lambda s(lambda) chi(m - <lambda, v/p_1>)`.
    pub fn dm(&self, m: i64) -> i64 {
        let (p1, rest) = self.index.primes.split_first().expect("nonempty");
        let steps: Vec<i64> = rest.iter().map(|&p| (self.index.n / (p1 * p)) as i64).collect();
        let mut d = 0;
        for mask in 0u32..1 << steps.len() {
            let shift: i64 = (0..steps.len()).filter(|i| mask >> i & 1 == 1).map(|i| steps[i]).sum();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            d += sign * self.chi(m - shift) as i64;
        }
        d
    }
}

pub fn chi(index: &CyclotomicIndex, m: i64) -> Result<u8> {
    Ok(SemigroupTable::new(index)?.chi(m))
}

pub fn dm_combinatorial(index: &CyclotomicIndex, m: i64) -> Result<i64> {
    require_admissible(index, 3)?;
    Ok(SemigroupTable::new(index)?.dm(m))
}

/// Residue data for a fixed `m`. Entries are indexed by `i = 2..=k`
/// (stored from position 0). `u` is kept multiplied by `p_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaContext {
    pub m: i64,
    pub v: Vec<i64>,
    pub v_over_p1: Vec<i64>,
    pub alpha0: Vec<i64>,
    pub alpha1: Vec<i64>,
    pub w: Vec<i64>,
    pub u_times_p1: Vec<i64>,
    pub d: i64,
}

impl LambdaContext {
    pub fn new(index: &CyclotomicIndex, m: i64) -> Result<Self> {
        require_admissible(index, 3)?;
        let n = index.n as i64;
        let p1 = index.primes[0] as i64;
        let mut ctx = LambdaContext {
            m,
            v: Vec::new(),
            v_over_p1: Vec::new(),
            alpha0: Vec::new(),
            alpha1: Vec::new(),
            w: Vec::new(),
            u_times_p1: Vec::new(),
            d: m,
        };
        for &p in &index.primes[1..] {
            let pi = p as i64;
            let vi = n / pi;
            let step = vi / p1;
            let inv = arith::mod_inverse((vi % pi) as u64, p).expect("n/p is prime to p") as i64;
            let alpha = |lam: i64| (m - lam * step).rem_euclid(pi) * inv % pi;
            let (a0, a1) = (alpha(0), alpha(1));
            let wi = (a1 - a0) * vi;
            ctx.v.push(vi);
            ctx.v_over_p1.push(step);
            ctx.alpha0.push(a0);
            ctx.alpha1.push(a1);
            ctx.w.push(wi);
            ctx.u_times_p1.push(vi + p1 * wi);
            ctx.d -= a0 * vi;
        }
        Ok(ctx)
    }

    /// `sum over lambda with <lambda, u> <= D of s(lambda)`.
    pub fn dm_by_inequality(&self, p1: i64) -> i64 {
        let t = self.u_times_p1.len();
        let mut d = 0;
        for mask in 0u32..1 << t {
            let lhs: i64 = (0..t).filter(|i| mask >> i & 1 == 1).map(|i| self.u_times_p1[i]).sum();
            if lhs <= p1 * self.d {
                d += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCertificate {
    /// Number of maximal `lambda` with last coordinate `0`.
    pub count: u64,
    /// Normalized `p_1 u`: nonnegative, minimal entry last.
    pub u_times_p1: Vec<i64>,
    /// Normalized `D` (not scaled by `p_1`).
    pub d: i64,
    /// Original positions (`0` for `i = 2`) in normalized order.
    pub order: Vec<usize>,
    /// Whether normalization flipped an odd number of coordinates.
    pub sign_flipped: bool,
}

/// Normalizes `u >= 0` by complementing coordinates with negative entries,
/// moves a minimal entry last and counts the maximal lambdas.
pub fn maximal_lambda_certificate(index: &CyclotomicIndex, m: i64) -> Result<LambdaCertificate> {
    let ctx = LambdaContext::new(index, m)?;
    Ok(certificate_from_context(&ctx, index.primes[0] as i64))
}

pub fn certificate_from_context(ctx: &LambdaContext, p1: i64) -> LambdaCertificate {
    let mut u = ctx.u_times_p1.clone();
    // Work with p1 * D throughout.
    let mut dd = p1 * ctx.d;
    let mut flips = 0;
    for ui in u.iter_mut() {
        if *ui < 0 {
            dd -= *ui;
            *ui = -*ui;
            flips += 1;
        }
    }
    let t = u.len();
    let last = (0..t).rev().min_by_key(|&i| u[i]).expect("k >= 3");
    let mut order: Vec<usize> = (0..t).filter(|&i| i != last).collect();
    order.push(last);
    let u: Vec<i64> = order.iter().map(|&i| u[i]).collect();

    let free = t - 1;
    let mut count = 0;
    for mask in 0u32..1 << free {
        let sum: i64 = (0..free).filter(|i| mask >> i & 1 == 1).map(|i| u[i]).sum();
        if sum > dd {
            continue;
        }
        let maximal = (0..free).filter(|i| mask >> i & 1 == 0).all(|i| sum + u[i] > dd);
        if maximal {
            count += 1;
        }
    }
    LambdaCertificate {
        count,
        u_times_p1: u,
        d: dd.div_euclid(p1),
        order,
        sign_flipped: flips % 2 == 1,
    }
}
