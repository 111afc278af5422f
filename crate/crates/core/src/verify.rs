//! Batch checkers behind `cyclotome verify`. Each suite walks a range of
//! indices, collects every failed check as a [`Violation`], and reports how
//! many checks ran.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::bounds::{self, BloomChecker, BoundCheck};
use crate::cyclo::{self, CyclotomicIndex};
use crate::decomp;
use crate::heights::{self, HeightRecord, DEFAULT_B_LIMIT};
use crate::par::{self, Jobs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    SmallOrders,
    Decomposition,
    Bloom,
    PhiTheorem,
    Kaplan,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Identities, Suite::SmallOrders, Suite::Decomposition, Suite::Bloom, Suite::PhiTheorem, Suite::Kaplan];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::SmallOrders => "small-orders",
            Suite::Decomposition => "decomposition",
            Suite::Bloom => "bloom",
            Suite::PhiTheorem => "phi-theorem",
            Suite::Kaplan => "kaplan",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// `n=...` or `primes=(...)`.
    pub subject: String,
    pub bound: String,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    fn new(subject: String, bound: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Violation { subject, bound: bound.into(), lhs: lhs.to_string(), rhs: rhs.to_string() }
    }

    fn from_check(n: u64, c: &BoundCheck) -> Self {
        Violation::new(format!("n={n}"), c.name, &c.lhs, &c.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub suite: String,
    pub checks_run: u64,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
    /// Wall time; kept out of the serialized form so reports are reproducible.
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl VerifyReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-index outcome, merged in index order.
#[derive(Default)]
struct Tally {
    checks: u64,
    violations: Vec<Violation>,
}

impl Tally {
    fn expect(&mut self, ok: bool, v: impl FnOnce() -> Violation) {
        self.checks += 1;
        if !ok {
            self.violations.push(v());
        }
    }

    fn bound(&mut self, n: u64, c: &BoundCheck) {
        self.expect(c.satisfied, || Violation::from_check(n, c));
    }

    fn merge(tallies: impl IntoIterator<Item = Tally>) -> Tally {
        tallies.into_iter().fold(Tally::default(), |mut acc, t| {
            acc.checks += t.checks;
            acc.violations.extend(t.violations);
            acc
        })
    }
}

fn indices(max: u64, keep: impl Fn(&CyclotomicIndex) -> bool) -> Vec<CyclotomicIndex> {
    (1..=max).map(|n| cyclo::analyze(n).expect("n >= 1")).filter(|i| keep(i)).collect()
}

/// Runs `suite` over indices up to `max`.
pub fn run(suite: Suite, max: u64, jobs: Jobs) -> VerifyReport {
    let start = Instant::now();
    let (tally, notes) = match suite {
        Suite::All => {
            let mut notes = Vec::new();
            let mut parts = Vec::new();
            for s in Suite::EACH {
                let r = run(s, max, jobs);
                notes.extend(r.notes.into_iter().map(|x| format!("{s}: {x}")));
                parts.push(Tally { checks: r.checks_run, violations: r.violations });
            }
            (Tally::merge(parts), notes)
        }
        Suite::Identities => identities(max, jobs),
        Suite::SmallOrders => small_orders(max, jobs),
        Suite::Decomposition => decomposition(max, jobs),
        Suite::Bloom => bloom(max, jobs),
        Suite::PhiTheorem => phi_theorem(max, jobs),
        Suite::Kaplan => kaplan(max, jobs),
    };
    VerifyReport {
        suite: suite.name().to_string(),
        checks_run: tally.checks,
        violations: tally.violations,
        notes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Kernel and doubling invariance of `A` and `C`, the `Psi` fold, both
/// constructions of `Phi_n`, and the divisor product identity.
fn identities(max: u64, jobs: Jobs) -> (Tally, Vec<String>) {
    let per_n = par::map(jobs, indices(max, |_| true), |idx| {
        let mut t = Tally::default();
        let n = idx.n;
        let subject = || format!("n={n}");
        let phi = cyclo::cyclotomic_of(&idx);
        let other = cyclo::cyclotomic_via_recursion(&idx);
        t.expect(phi == other, || Violation::new(subject(), "Phi_n by product = Phi_n by recursion", "differs", "equal"));

        if idx.odd {
            let here = heights::heights_of_index(&idx);
            let ker = heights::heights_of(idx.kernel).expect("kernel >= 1");
            let twice = heights::heights_of(2 * n).expect("2n >= 1");
            t.expect(here.a == ker.a, || Violation::new(subject(), "A_n = A_ker(n)", &here.a, &ker.a));
            t.expect(here.a == twice.a, || Violation::new(subject(), "A_n = A_2n", &here.a, &twice.a));
            if n > 1 {
                let (c, ck, c2) = (here.c.unwrap(), ker.c.unwrap(), twice.c.unwrap());
                t.expect(c == ck, || Violation::new(subject(), "C_n = C_ker(n)", &c, &ck));
                t.expect(c == c2, || Violation::new(subject(), "C_n = C_2n", &c, &c2));
            }
        }

        if n >= 2 {
            let ic = cyclo::inverse_cyclotomic_of(&idx);
            let order = 2 * n as usize;
            let psi = cyclo::psi_prefix(n, order).expect("n >= 2");
            let bad = (0..order).find(|&m| psi.coeff(m) != ic.coeff(m % n as usize));
            t.expect(bad.is_none(), || {
                let m = bad.unwrap();
                Violation::new(subject(), format!("Psi fold at m={m}"), psi.coeff(m), ic.coeff(m % n as usize))
            });
        }

        if idx.squarefree {
            t.expect(bounds::divisor_product_identity(&idx), || {
                Violation::new(subject(), "prod_{d|n} d = n^{2^{k-1}}", "differs", "equal")
            });
        }
        t
    });
    let mut t = Tally::merge(per_n);
    if max >= 1 {
        let s1 = heights::heights_of(1).expect("1").s;
        t.expect(s1 == BigUint::from(2u32), || Violation::new("n=1".into(), "S_1 = 2", &s1, 2));
    }
    (t, Vec::new())
}

/// `eps3 = 3/4` bounds for `k <= 3` and the `M_k` bounds beyond; also
/// `S_{2q} <= q`, which holds with equality.
fn small_orders(max: u64, jobs: Jobs) -> (Tally, Vec<String>) {
    let eps3 = BigRational::new(3.into(), 4.into());
    let idx = indices(max, |i| i.squarefree && (i.odd || i.omega == 2));
    let per_n = par::map(jobs, idx, |i| {
        let rec = heights::heights_of_index(&i);
        let mut t = Tally::default();
        if i.odd {
            for c in bounds::check_small_orders(&rec, &eps3) {
                t.bound(i.n, &c);
            }
        } else {
            let half = BigUint::from(i.n / 2);
            t.expect(rec.s <= half, || Violation::new(format!("n={}", i.n), "S_pq <= pq/2", &rec.s, &half));
        }
        (t, sharpness(&i, &rec))
    });
    let mut best: Option<(BigRational, u64)> = None;
    let mut tallies = Vec::new();
    for (t, r) in per_n {
        tallies.push(t);
        if let Some((v, n)) = r {
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, n));
            }
        }
    }
    let notes = best
        .map(|(v, n)| vec![format!("max C_pqr/(p-1) = {v} at n={n}")])
        .unwrap_or_default();
    (Tally::merge(tallies), notes)
}

fn sharpness(i: &CyclotomicIndex, rec: &HeightRecord) -> Option<(BigRational, u64)> {
    (i.odd && i.omega == 3).then(|| {
        let c = rec.c.clone().expect("n > 1");
        (BigRational::new(c.into(), (i.primes[0] - 1).into()), i.n)
    })
}

/// The congruence `fstar * prod P_j = Phi_n mod x^n` and `H(fstar) <= b_{k-2}`
/// for odd squarefree `n` with three to five prime factors.
fn decomposition(max: u64, jobs: Jobs) -> (Tally, Vec<String>) {
    let idx = indices(max, |i| i.is_odd_squarefree() && (3..=5).contains(&i.omega));
    let per_n = par::map(jobs, idx, |i| {
        let check = decomp::build_decomposition(&i).expect("admissible").check();
        let mut t = Tally::default();
        let subject = || format!("n={}", i.n);
        t.expect(check.congruence, || Violation::new(subject(), "fstar prod P_j = Phi_n mod x^n", "differs", "equal"));
        t.expect(check.fstar_height <= check.sperner, || {
            Violation::new(subject(), "H(fstar) <= b_{k-2}", &check.fstar_height, &check.sperner)
        });
        t
    });
    (Tally::merge(per_n), Vec::new())
}

/// Symmetry and `|a(m)| <= 2 (floor(m/qr) + 1)` at every `m` for `n = pqr`.
fn bloom(max: u64, jobs: Jobs) -> (Tally, Vec<String>) {
    let idx = indices(max, |i| i.is_odd_squarefree() && i.omega == 3);
    let per_n = par::map(jobs, idx, |i| {
        let checker = BloomChecker::new(&i).expect("ternary");
        let mut t = Tally { checks: checker.degree() as u64 + 1, violations: Vec::new() };
        for f in checker.failures() {
            let (bound, lhs, rhs) = if f.symmetric {
                (format!("|a({})| <= 2(floor(m/qr)+1)", f.m), f.value.abs(), f.bound)
            } else {
                (format!("|a({})| = |a(phi-m)|", f.m), f.value.abs(), f.mirror.abs())
            };
            t.violations.push(Violation::new(format!("n={}", i.n), bound, lhs, rhs));
        }
        t
    });
    (Tally::merge(per_n), Vec::new())
}

/// Tuples drawn at random for the phi-theorem suite.
pub const PHI_RANDOM_TUPLES: usize = 10_000;
pub const PHI_SEED: u64 = 0x5eed_c1c1;

/// Every ascending tuple of length `<= 6` from the first 15 odd primes, plus
/// [`PHI_RANDOM_TUPLES`] seeded tuples of length `2..=10` from the odd primes
/// up to `max` (at least the first 15).
fn phi_theorem(max: u64, jobs: Jobs) -> (Tally, Vec<String>) {
    let first = arith::odd_primes(15);
    let mut tuples = Vec::new();
    for mask in 1u32..(1 << first.len()) {
        if mask.count_ones() <= 6 {
            tuples.push((0..first.len()).filter(|&i| mask >> i & 1 == 1).map(|i| first[i]).collect::<Vec<_>>());
        }
    }
    let exhaustive = tuples.len();
    let mut pool: Vec<u64> = arith::primes_up_to(max).into_iter().filter(|&p| p > 2).collect();
    if pool.len() < first.len() {
        pool = first.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PHI_SEED);
    for _ in 0..PHI_RANDOM_TUPLES {
        let k = 2 + (rand::Rng::gen_range(&mut rng, 0..9usize)).min(pool.len() - 2);
        let mut t: Vec<u64> = sample(&mut rng, pool.len(), k).into_iter().map(|i| pool[i]).collect();
        t.sort_unstable();
        tuples.push(t);
    }
    let per = par::map(jobs, tuples, |t| {
        let c = bounds::theorem_phi_check(&t).expect("ascending primes");
        let mut tally = Tally::default();
        tally.expect(c.ok, || {
            let names: Vec<String> = t.iter().map(u64::to_string).collect();
            Violation::new(format!("primes=({})", names.join(",")), "M_k^k <= phi(n)^{2^{k-1}-k}", &c.lhs, &c.rhs)
        });
        tally
    });
    let note = format!(
        "{exhaustive} exhaustive tuples, {PHI_RANDOM_TUPLES} random tuples from {} odd primes <= {}",
        pool.len(),
        pool.last().unwrap()
    );
    (Tally::merge(per), vec![note])
}

/// `B_n < prod_{j<k} p_j^{4 * 3^{k-2} - 1}` for every squarefree `n <= max`
/// with `k >= 2` and at most 16 divisors, odd or even.
fn kaplan(max: u64, jobs: Jobs) -> (Tally, Vec<String>) {
    let filters = heights::ScanFilters { squarefree: true, with_b: true, b_limit: DEFAULT_B_LIMIT, ..Default::default() };
    let idx = indices(max, |i| i.squarefree && i.omega >= 2 && (1u64 << i.omega) <= 16);
    let per = par::map(jobs, idx, |i| {
        let rec = heights::record_for(&i, &filters);
        let rep = bounds::kaplan_compare(&rec).expect("B present");
        let mut t = Tally::default();
        t.expect(rep.holds == Some(true), || {
            Violation::new(format!("n={}", i.n), "B_n < prod p_j^{4 3^{k-2} - 1}", &rep.b, rep.kaplan_bound.as_ref().unwrap())
        });
        (t, rep)
    });
    let mut eta: Vec<(usize, f64, u64)> = Vec::new();
    let mut tallies = Vec::new();
    for (t, rep) in per {
        tallies.push(t);
        match eta.iter_mut().find(|e| e.0 == rep.k) {
            Some(e) if rep.eta_observed > e.1 => *e = (rep.k, rep.eta_observed, rep.n),
            Some(_) => {}
            None => eta.push((rep.k, rep.eta_observed, rep.n)),
        }
    }
    eta.sort_by_key(|e| e.0);
    let notes = eta
        .into_iter()
        .map(|(k, v, n)| format!("k={k}: max B_n / n^((3^k-1)/(2k)-1) = {v:.6e} at n={n}"))
        .collect();
    (Tally::merge(tallies), notes)
}
