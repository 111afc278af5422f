//! Rigorous real enclosures in binary fixed point.
//!
//! An [`Interval`] holds integers `lo <= hi` and stands for the real interval
//! `[lo, hi] * 2^-PREC`. Every operation rounds `lo` down and `hi` up, so the
//! true value is never lost. Logarithms of rationals use the `atanh` series
//! with an explicit tail bound; `exp` uses a Taylor polynomial with a
//! remainder bound followed by repeated squaring.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits carried by every interval.
pub const PREC: u64 = 400;

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
}

fn unit() -> BigInt {
    BigInt::one() << PREC
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Interval {
    pub fn from_int(v: i64) -> Self {
        let x = BigInt::from(v) << PREC;
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let scaled = r.numer() << PREC;
        Interval { lo: scaled.div_floor(r.denom()), hi: ceil_div(&scaled, r.denom()) }
    }

    /// `[a, b]` from rational endpoints, rounded outward.
    pub fn from_bounds(a: &BigRational, b: &BigRational) -> Self {
        assert!(a <= b, "empty interval");
        Interval { lo: Self::from_rational(a).lo, hi: Self::from_rational(b).hi }
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), unit())
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), unit())
    }

    pub fn width_rational(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, unit())
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        BigRational::new(&self.lo + &self.hi, unit() * 2).to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo_rational() <= x && x <= &self.hi_rational()
    }

    /// Whether the enclosure meets `[x - tol, x + tol]`.
    pub fn meets_ball(&self, x: &BigRational, tol: &BigRational) -> bool {
        self.lo_rational() <= x + tol && self.hi_rational() >= x - tol
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Entire interval strictly below `other`.
    pub fn lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    /// Union hull.
    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: (&self.lo).min(&o.lo).clone(), hi: (&self.hi).max(&o.hi).clone() }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let u = unit();
        let prods = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = prods.iter().min().expect("four products");
        let max = prods.iter().max().expect("four products");
        Interval { lo: min.div_floor(&u), hi: ceil_div(max, &u) }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.sign() == Sign::Minus {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: u64) -> Interval {
        assert!(k > 0);
        let k = BigInt::from(k);
        Interval { lo: self.lo.div_floor(&k), hi: ceil_div(&self.hi, &k) }
    }

    /// Multiplication by `2^-s`.
    pub fn shr(&self, s: u64) -> Interval {
        let d = BigInt::one() << s;
        Interval { lo: self.lo.div_floor(&d), hi: ceil_div(&self.hi, &d) }
    }

    pub fn exp(&self) -> Interval {
        Interval { lo: exp_point(&self.lo).lo, hi: exp_point(&self.hi).hi }
    }

    /// `ln r` for a positive rational.
    pub fn ln(r: &BigRational) -> Interval {
        assert!(r.is_positive(), "logarithm of a non-positive number");
        let one = BigRational::one();
        let direct = (r - &one) / (r + &one);
        if direct.abs() <= rat(1, 3) {
            return atanh(&direct).mul_int(&BigInt::from(2));
        }
        // r = 2^k y with y in [1/2, 2).
        let k = r.numer().bits() as i64 - r.denom().bits() as i64;
        let y = if k >= 0 {
            r / BigRational::from_integer(BigInt::one() << k as u64)
        } else {
            r * BigRational::from_integer(BigInt::one() << (-k) as u64)
        };
        let z = (&y - &one) / (&y + &one);
        ln2().mul_int(&BigInt::from(k)).add(&atanh(&z).mul_int(&BigInt::from(2)))
    }

    /// Decimal endpoints with `digits` fractional digits, rounded outward.
    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        let scale = BigInt::from(10u32).pow(digits);
        let u = unit();
        let lo = (&self.lo * &scale).div_floor(&u);
        let hi = ceil_div(&(&self.hi * &scale), &u);
        (fixed_decimal(&lo, digits), fixed_decimal(&hi, digits))
    }
}

fn fixed_decimal(v: &BigInt, digits: u32) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let d = digits as usize;
    let s = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (int, frac) = s.split_at(s.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal(20);
        write!(f, "[{lo}, {hi}]")
    }
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2() -> Interval {
    static LN2: OnceLock<Interval> = OnceLock::new();
    LN2.get_or_init(|| atanh(&BigRational::new(1.into(), 3.into())).mul_int(&BigInt::from(2))).clone()
}

/// `atanh z = sum z^{2j+1}/(2j+1)` for rational `|z| <= 1/3`.
///
/// Each term is rounded outward on its own; the series stops once a term
/// drops below one unit, and the tail, at most `9/8` of that term, is
/// covered by widening both ends by one more unit.
fn atanh(z: &BigRational) -> Interval {
    let (num, den) = (z.numer(), z.denom());
    let (num2, den2) = (num * num, den * den);
    let mut pn = num.clone();
    let mut pd = den.clone();
    let mut acc = Interval::from_int(0);
    let mut j = 0u64;
    loop {
        let d = &pd * BigInt::from(2 * j + 1);
        let scaled = &pn << PREC;
        let lo = scaled.div_floor(&d);
        let hi = ceil_div(&scaled, &d);
        let small = (pn.abs() << (PREC + 2)) < d;
        acc.lo += lo;
        acc.hi += hi;
        if small {
            acc.lo -= 2;
            acc.hi += 2;
            return acc;
        }
        pn *= &num2;
        pd *= &den2;
        j += 1;
    }
}

/// Enclosure of `exp(x * 2^-PREC)`.
fn exp_point(x: &BigInt) -> Interval {
    // Halve until |y| <= 2^-8 and carry `s + 32` guard bits through the squarings.
    let mag = x.bits() as i64 - PREC as i64;
    let s = (mag + 8).max(0) as u64;
    let w = PREC + s + 32;
    let one = BigInt::one() << w;
    // |y| = ay 2^-w exactly.
    let ay = x.abs() << (w - PREC - s);
    let negative = x.is_negative();
    let (mut t_lo, mut t_hi) = (one.clone(), one.clone());
    let (mut lo, mut hi) = (one.clone(), one.clone());
    let mut j = 1u64;
    loop {
        let d = &one * BigInt::from(j);
        t_lo = (&t_lo * &ay).div_floor(&d);
        t_hi = ceil_div(&(&t_hi * &ay), &d);
        if negative && j % 2 == 1 {
            lo -= &t_hi;
            hi -= &t_lo;
        } else {
            lo += &t_lo;
            hi += &t_hi;
        }
        // The remaining terms sum to at most t_hi |y| / (j + 1 - |y|) <= t_hi.
        if t_hi <= BigInt::one() {
            lo -= &t_hi + 1;
            hi += &t_hi + 1;
            break;
        }
        j += 1;
    }
    if lo.is_negative() {
        lo = BigInt::zero();
    }
    for _ in 0..s {
        lo = (&lo * &lo).div_floor(&one);
        hi = ceil_div(&(&hi * &hi), &one);
    }
    let shift = BigInt::one() << (w - PREC);
    Interval { lo: lo.div_floor(&shift), hi: ceil_div(&hi, &shift) }
}

impl PartialOrd for Interval {
    /// Ordered only when disjoint.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other && self.lo == self.hi {
            Some(Ordering::Equal)
        } else if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}
