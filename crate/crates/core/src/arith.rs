//! Integer helpers: factorization, divisors, primes, binomials.

use num_bigint::BigUint;
use num_traits::One;

/// Prime factorization by trial division, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

/// Primes `<= bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The first `count` odd primes: 3, 5, 7, 11, ...
pub fn odd_primes(count: usize) -> Vec<u64> {
    let mut bound = 64u64;
    loop {
        let ps: Vec<u64> = primes_up_to(bound).into_iter().filter(|&p| p > 2).collect();
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        bound *= 2;
    }
}

/// All products of subsets of `primes`, ascending.
pub fn squarefree_divisors(primes: &[u64]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let ext: Vec<u64> = out.iter().map(|d| d * p).collect();
        out.extend(ext);
    }
    out.sort_unstable();
    out
}

/// Subsets of `primes` with their products, as (product, subset size).
pub(crate) fn squarefree_divisors_with_size(primes: &[u64]) -> Vec<(u64, usize)> {
    let mut out = vec![(1u64, 0usize)];
    for &p in primes {
        let ext: Vec<(u64, usize)> = out.iter().map(|&(d, s)| (d * p, s + 1)).collect();
        out.extend(ext);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` (`m > 1`, `gcd(a, m) = 1`).
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Central binomial coefficient `binom(t, floor(t/2))`, the Sperner bound for
/// antichains in the subsets of a `t`-element set.
pub fn sperner_bound(t: u64) -> BigUint {
    binomial(t, t / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(105), vec![(3, 1), (5, 1), (7, 1)]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(999_983), vec![(999_983, 1)]);
        assert_eq!(factorize(49 * 121), vec![(7, 2), (11, 2)]);
    }

    #[test]
    fn sieve_and_odd_primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(odd_primes(5), vec![3, 5, 7, 11, 13]);
        assert_eq!(odd_primes(15).last(), Some(&53));
    }

    #[test]
    fn divisors() {
        assert_eq!(squarefree_divisors(&[3, 5]), vec![1, 3, 5, 15]);
        assert_eq!(squarefree_divisors(&[]), vec![1]);
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(6, 9), None);
        for m in [5u64, 7, 11, 13] {
            for a in 1..m {
                assert_eq!(a * mod_inverse(a, m).unwrap() % m, 1);
            }
        }
    }

    #[test]
    fn central_binomials() {
        let got: Vec<u64> = [0u64, 1, 2, 3, 4, 10]
            .iter()
            .map(|&t| sperner_bound(t).try_into().unwrap())
            .collect();
        assert_eq!(got, vec![1, 1, 2, 3, 6, 252]);
    }
}
