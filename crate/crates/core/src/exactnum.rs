//! Exact rational scalars, rational-endpoint intervals and enclosures of pi.
//!
//! Everything in this crate computes over [`Rat`] (arbitrary-precision
//! rationals in canonical reduced form, positive denominator). Intervals keep
//! exact rational endpoints, so interval arithmetic here is containment-exact:
//! no rounding step ever widens a result beyond the algebraic necessity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// Canonical exact rational: reduced, denominator positive, zero is `0/1`.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero base with negative exponent")]
    ZeroToNegativePower,
    #[error("interval endpoints out of order")]
    EndpointsOutOfOrder,
    #[error("division by an interval containing zero")]
    IntervalContainsZero,
    #[error("invalid rational literal `{0}`")]
    BadRationalLiteral(String),
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as an exact rational. Panics on `d == 0` (construction error, not data).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat, NumError> {
    if b.is_zero() {
        return Err(NumError::DivisionByZero);
    }
    Ok(a / b)
}

/// Integer power with negative exponents; `0^e` for `e < 0` is an error.
pub fn rat_pow(a: &Rat, e: i32) -> Result<Rat, NumError> {
    if a.is_zero() && e < 0 {
        return Err(NumError::ZeroToNegativePower);
    }
    Ok(a.pow(e))
}

/// Renders `p` when the denominator is one, `p/q` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `0.02` (kept exact: `2/100`).
pub fn parse_rat(s: &str) -> Result<Rat, NumError> {
    let t = s.trim();
    let bad = || NumError::BadRationalLiteral(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let signed_frac = if neg { -frac_num } else { frac_num };
        return Ok(Rat::from_integer(int) + Rat::new(signed_frac, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Decimal rendering for convenience columns; truncated toward zero.
pub fn rat_to_decimal(r: &Rat, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let int = a.to_integer();
    let mut frac = &a - Rat::from_integer(int.clone());
    let mut out = String::new();
    if neg && !r.is_zero() {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if digits > 0 {
        out.push('.');
        for _ in 0..digits {
            frac *= Rat::from_integer(BigInt::from(10));
            let d = frac.to_integer();
            out.push_str(&d.to_string());
            frac -= Rat::from_integer(d);
        }
    }
    out
}

/// A closed interval with exact rational endpoints, `lo <= hi`.
///
/// Arithmetic is containment-exact: for members `a` and `b` of the operand
/// intervals, `op(a, b)` lies in the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, NumError> {
        if lo > hi {
            return Err(NumError::EndpointsOutOfOrder);
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(r: Rat) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        RatInterval { lo, hi }
    }

    /// Tight square: `[0, max^2]` when the interval spans zero.
    pub fn sqr(&self) -> Self {
        if !self.lo.is_negative() {
            RatInterval {
                lo: &self.lo * &self.lo,
                hi: &self.hi * &self.hi,
            }
        } else if !self.hi.is_positive() {
            RatInterval {
                lo: &self.hi * &self.hi,
                hi: &self.lo * &self.lo,
            }
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            RatInterval {
                lo: Rat::zero(),
                hi: a.max(b),
            }
        }
    }

    pub fn recip(&self) -> Result<Self, NumError> {
        if self.contains_zero() {
            return Err(NumError::IntervalContainsZero);
        }
        Ok(RatInterval {
            lo: Rat::one() / &self.hi,
            hi: Rat::one() / &self.lo,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, NumError> {
        Ok(self.mul(&o.recip()?))
    }

    /// Nonnegative integer power via repeated squaring on the tight square.
    pub fn pow(&self, e: u32) -> Self {
        match e {
            0 => RatInterval::point(Rat::one()),
            1 => self.clone(),
            _ => {
                let h = self.sqr().pow(e / 2);
                if e % 2 == 0 {
                    h
                } else {
                    h.mul(self)
                }
            }
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_negative() {
            RatInterval {
                lo: &self.hi * r,
                hi: &self.lo * r,
            }
        } else {
            RatInterval {
                lo: &self.lo * r,
                hi: &self.hi * r,
            }
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        RatInterval {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    /// Certified strict comparison; `None` when the intervals overlap or touch.
    pub fn cmp_strict(&self, o: &Self) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rat(&self.lo), format_rat(&self.hi))
    }
}

/// Enclosure of `arctan(1/q)` from `terms` partial-sum terms of the Leibniz
/// series, tail-bounded by the first omitted term.
fn atan_inv_enclosure(q: u64, terms: usize) -> RatInterval {
    debug_assert!(terms >= 1);
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut qpow = q.clone(); // q^(2k+1)
    let mut sum = Rat::zero();
    for k in 0..terms {
        let term = Rat::new(BigInt::one(), BigInt::from(2 * k as u64 + 1) * &qpow);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        qpow *= &q2;
    }
    let next = Rat::new(BigInt::one(), BigInt::from(2 * terms as u64 + 1) * &qpow);
    if terms % 2 == 0 {
        // next term would be added
        RatInterval {
            lo: sum.clone(),
            hi: sum + next,
        }
    } else {
        RatInterval {
            lo: &sum - &next,
            hi: sum,
        }
    }
}

fn machin_tail_bound(terms: usize) -> Rat {
    // width of 16*atan(1/5) - 4*atan(1/239) built from `terms` terms each
    let t5 = Rat::new(
        BigInt::from(16),
        BigInt::from(2 * terms as u64 + 1) * BigInt::from(5u64).pow(2 * terms as u32 + 1),
    );
    let t239 = Rat::new(
        BigInt::from(4),
        BigInt::from(2 * terms as u64 + 1) * BigInt::from(239u64).pow(2 * terms as u32 + 1),
    );
    t5 + t239
}

/// Rational enclosure of pi with width at most `2^-precision_bits`.
///
/// Built from the Machin identity `pi = 16 arctan(1/5) - 4 arctan(1/239)`
/// with alternating-series tail bounds. Enclosures are nested: a larger
/// `precision_bits` always yields an interval contained in any
/// smaller-precision result.
pub fn pi_enclosure(precision_bits: u32) -> RatInterval {
    let target = Rat::new(BigInt::one(), BigInt::from(2u32).pow(precision_bits.max(1)));
    let mut terms = 1usize;
    while machin_tail_bound(terms) > target {
        terms += 1;
    }
    let a5 = atan_inv_enclosure(5, terms);
    let a239 = atan_inv_enclosure(239, terms);
    let sixteen = Rat::from_integer(BigInt::from(16));
    let four = Rat::from_integer(BigInt::from(4));
    RatInterval {
        lo: &a5.lo * &sixteen - &a239.hi * &four,
        hi: &a5.hi * &sixteen - &a239.lo * &four,
    }
}

pub fn interval_decimal(iv: &RatInterval, digits: usize) -> String {
    format!(
        "[{}, {}]",
        rat_to_decimal(&iv.lo, digits),
        rat_to_decimal(&iv.hi, digits)
    )
}

/// `2^-bits` as an exact rational.
pub fn pow2_neg(bits: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(2u32).pow(bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_examples() {
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(rat(8, 45) * rat(45, 8), rat_int(1));
        assert_eq!(rat(8, 45) - rat(8, 945), rat(32, 189));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            checked_div(&rat_int(1), &Rat::zero()),
            Err(NumError::DivisionByZero)
        );
        assert_eq!(
            rat_pow(&Rat::zero(), -2),
            Err(NumError::ZeroToNegativePower)
        );
        assert_eq!(rat_pow(&rat(2, 3), -2), Ok(rat(9, 4)));
    }

    #[test]
    fn interval_examples() {
        let a = RatInterval::new(rat_int(1), rat_int(2)).unwrap();
        let b = RatInterval::new(rat_int(3), rat_int(4)).unwrap();
        assert_eq!(a.add(&b), RatInterval::new(rat_int(4), rat_int(6)).unwrap());

        let c = RatInterval::new(rat_int(-1), rat_int(1)).unwrap();
        let d = RatInterval::new(rat_int(2), rat_int(3)).unwrap();
        assert_eq!(
            c.mul(&d),
            RatInterval::new(rat_int(-3), rat_int(3)).unwrap()
        );

        let e = RatInterval::new(rat_int(-2), rat_int(1)).unwrap();
        assert_eq!(e.sqr(), RatInterval::new(rat_int(0), rat_int(4)).unwrap());

        assert!(RatInterval::new(rat_int(2), rat_int(1)).is_err());
        assert_eq!(
            c.div(&c).unwrap_err(),
            NumError::IntervalContainsZero
        );
    }

    #[test]
    fn pi_enclosure_basics() {
        let p6 = pi_enclosure(6);
        assert!(p6.lo() < p6.hi());
        assert!(p6.width() <= pow2_neg(6));
        // inside [3.14, 3.15], hence above 355/113 - 1/100
        assert!(p6.lo() >= &rat(314, 100));
        assert!(p6.hi() <= &rat(315, 100));
        assert!(p6.lo() > &(rat(355, 113) - rat(1, 100)));

        let p1 = pi_enclosure(1);
        let p30 = pi_enclosure(30);
        assert!(p1.contains_interval(&p30));
        // pi < 3.1416: a 30-bit enclosure excludes it
        assert!(p30.hi() < &rat(31416, 10000));
    }

    #[test]
    fn pi_enclosure_nesting_ladder() {
        let mut prev = pi_enclosure(1);
        for bits in [2u32, 4, 8, 16, 32, 64, 96, 128] {
            let cur = pi_enclosure(bits);
            assert!(prev.contains_interval(&cur), "nesting failed at {bits}");
            assert!(cur.width() <= pow2_neg(bits));
            prev = cur;
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rat("0.02").unwrap(), rat(1, 50));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
        assert_eq!(format_rat(&rat(3, 4)), "3/4");
        assert_eq!(format_rat(&rat_int(76204800)), "76204800");
        assert_eq!(rat_to_decimal(&rat(1, 8), 4), "0.1250");
        assert_eq!(rat_to_decimal(&rat(-1, 3), 3), "-0.333");
    }
}
