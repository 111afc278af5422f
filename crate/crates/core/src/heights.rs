//! Height statistics `A_n`, `S_n`, `C_n` and `B_n`, and ordered range scans.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclo::{self, CyclotomicIndex};
use crate::error::{Error, Result};
use crate::par::{self, Jobs};
use crate::polyring::coeffs::CoeffVec;

/// Default cap on the number of divisor subsets enumerated for `B_n`.
pub const DEFAULT_B_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightRecord {
    pub n: u64,
    pub omega: usize,
    pub phi: u64,
    #[serde(rename = "A", with = "big")]
    pub a: BigUint,
    #[serde(rename = "S", with = "big")]
    pub s: BigUint,
    /// Absent for `n = 1`, where `1/Phi_1` has no integer expansion with unit sign.
    #[serde(rename = "C", with = "big_opt", default)]
    pub c: Option<BigUint>,
    #[serde(rename = "B", with = "big_opt", default)]
    pub b: Option<BigUint>,
    #[serde(rename = "witnessSubset", default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u64>>,
    #[serde(rename = "bLimitExceeded", default)]
    pub b_limit_exceeded: bool,
}

/// Heights are plain JSON numbers up to `u64::MAX` and decimal strings beyond.
mod big {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(super) enum Repr {
        Num(u64),
        Str(String),
    }

    pub(super) fn to_repr(v: &BigUint) -> Repr {
        match u64::try_from(v) {
            Ok(x) => Repr::Num(x),
            Err(_) => Repr::Str(v.to_string()),
        }
    }

    pub(super) fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigUint, E> {
        match r {
            Repr::Num(x) => Ok(BigUint::from(x)),
            Repr::Str(s) => s.parse().map_err(E::custom),
        }
    }

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        from_repr(Repr::deserialize(d).map_err(D::Error::custom)?)
    }
}

mod big_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::big::{from_repr, to_repr, Repr};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<Repr>::deserialize(d)?.map(from_repr).transpose()
    }
}

/// `A_n`, `S_n` and `C_n` (no `B_n`).
pub fn heights_of(n: u64) -> Result<HeightRecord> {
    let index = cyclo::analyze(n)?;
    Ok(heights_of_index(&index))
}

pub fn heights_of_index(index: &CyclotomicIndex) -> HeightRecord {
    let phi = cyclo::cyclotomic_of(index);
    // One period of Psi_n is the inverse cyclotomic polynomial padded with zeros.
    let c = (index.n >= 2).then(|| cyclo::inverse_cyclotomic_of(index).height());
    HeightRecord {
        n: index.n,
        omega: index.omega,
        phi: index.totient,
        a: phi.height(),
        s: phi.abs_sum(),
        c,
        b: None,
        witness: None,
        b_limit_exceeded: false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorHeight {
    pub b: BigUint,
    /// Lexicographically smallest divisor subset attaining `b`.
    pub witness: Vec<u64>,
}

/// `B_n`: the largest height of `prod_{d in D} Phi_d` over all sets `D` of
/// divisors of squarefree `n`.
///
/// Subsets are visited depth first in lexicographic order of their sorted
/// divisor lists; each child multiplies the parent product by one more
/// `Phi_d` using linear binomial passes, so nothing is ever divided out.
pub fn max_divisor_height(n: u64, limit: u64) -> Result<DivisorHeight> {
    let index = cyclo::analyze(n)?;
    if !index.squarefree {
        return Err(Error::NotAdmissible { n, reason: "B_n enumeration needs squarefree n".into() });
    }
    let divisors = arith::squarefree_divisors(&index.primes);
    let tau = divisors.len();
    if tau >= 64 || (1u64 << tau) > limit {
        return Err(Error::TooManyDivisors { n, divisors: tau, limit });
    }
    let factors: Vec<_> = divisors
        .iter()
        .map(|&d| {
            let di = cyclo::analyze(d).expect("d >= 1");
            (cyclo::cyclotomic_factors(&di), di.totient as usize)
        })
        .collect();

    let mut search = Search {
        factors: &factors,
        buffers: vec![CoeffVec::zeros(0); tau + 1],
        path: Vec::with_capacity(tau),
        best: BigUint::from(1u32),
        best_path: Vec::new(),
    };
    search.buffers[0] = CoeffVec::Small(vec![1]);
    search.visit(0, 0);
    Ok(DivisorHeight {
        b: search.best,
        witness: search.best_path.iter().map(|&i| divisors[i]).collect(),
    })
}

struct Search<'a> {
    factors: &'a [(crate::polyring::BinomialQuotient, usize)],
    /// `buffers[depth]` holds the product along the current path.
    buffers: Vec<CoeffVec>,
    path: Vec<usize>,
    best: BigUint,
    best_path: Vec<usize>,
}

impl Search<'_> {
    fn visit(&mut self, depth: usize, start: usize) {
        for j in start..self.factors.len() {
            let (q, phi) = &self.factors[j];
            let (lo, hi) = self.buffers.split_at_mut(depth + 1);
            let parent = &lo[depth];
            let child = &mut hi[0];
            child.clone_from(parent);
            child.resize(parent.len() + phi);
            q.apply(child);
            self.path.push(j);
            let h = child.max_abs();
            if h > self.best {
                self.best = h;
                self.best_path.clone_from(&self.path);
            }
            self.visit(depth + 1, j + 1);
            self.path.pop();
        }
    }
}

/// Which indices a scan reports, and whether it computes `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanFilters {
    pub odd: bool,
    pub squarefree: bool,
    /// Allowed values of `omega(n)`; empty allows all.
    pub omega: Vec<usize>,
    pub with_b: bool,
    pub b_limit: u64,
}

impl Default for ScanFilters {
    fn default() -> Self {
        ScanFilters { odd: false, squarefree: false, omega: Vec::new(), with_b: false, b_limit: DEFAULT_B_LIMIT }
    }
}

impl ScanFilters {
    pub fn accepts(&self, index: &CyclotomicIndex) -> bool {
        (!self.odd || index.odd)
            && (!self.squarefree || index.squarefree)
            && (self.omega.is_empty() || self.omega.contains(&index.omega))
    }
}

/// The full record for one index under the given filters' `B` settings.
pub fn record_for(index: &CyclotomicIndex, filters: &ScanFilters) -> HeightRecord {
    let mut rec = heights_of_index(index);
    if filters.with_b && index.squarefree {
        match max_divisor_height(index.n, filters.b_limit) {
            Ok(bh) => {
                rec.b = Some(bh.b);
                rec.witness = Some(bh.witness);
            }
            Err(Error::TooManyDivisors { .. }) => rec.b_limit_exceeded = true,
            Err(e) => unreachable!("{e}"),
        }
    }
    rec
}

/// Indices in `range` accepted by `filters`, ascending.
pub fn scan_indices(range: RangeInclusive<u64>, filters: &ScanFilters) -> Vec<CyclotomicIndex> {
    let (lo, hi) = (*range.start().max(&1), *range.end());
    (lo..=hi)
        .map(|n| cyclo::analyze(n).expect("n >= 1"))
        .filter(|i| filters.accepts(i))
        .collect()
}

/// Records per chunk handed to the sink in [`scan_with`].
pub const SCAN_CHUNK: usize = 256;

/// Computes records for every accepted index and passes them to `sink` in
/// ascending order of `n`, one chunk at a time.
pub fn scan_with<F: FnMut(HeightRecord)>(
    range: RangeInclusive<u64>,
    filters: &ScanFilters,
    jobs: Jobs,
    mut sink: F,
) {
    let indices = scan_indices(range, filters);
    for chunk in indices.chunks(SCAN_CHUNK) {
        for rec in par::map(jobs, chunk.to_vec(), |i| record_for(&i, filters)) {
            sink(rec);
        }
    }
}

pub fn scan(range: RangeInclusive<u64>, filters: &ScanFilters, jobs: Jobs) -> Vec<HeightRecord> {
    let mut out = Vec::new();
    scan_with(range, filters, jobs, |r| out.push(r));
    out
}
