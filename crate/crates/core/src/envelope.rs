//! Taylor truncations of sin and cos and rigorous trig enclosures on (0, pi/2).
//!
//! The truncations `u(x, p) = sum_{k=0..p} (-1)^k x^(2k+1)/(2k+1)!` and
//! `v(x, q) = sum_{k=0..q} (-1)^k x^(2k)/(2k)!` bracket sin and cos on
//! (0, pi/2): an odd truncation index gives a lower bound, an even index an
//! upper bound (Leibniz alternating-series bounds). Those bracket axioms are
//! trusted here, not re-proved; the test suite exercises them numerically.
//!
//! The same bracketing evaluates sin and cos to any requested width at exact
//! rational points; tan and cot follow by interval division.

use crate::exactnum::{pi_enclosure, NumError, Rat, RatInterval};
use crate::polyring::Poly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("point {0} is not certified inside (0, pi/2)")]
    OutsideDomain(String),
    #[error("target width must be positive")]
    NonPositiveWidth,
    #[error("cos enclosure still contains zero at the refinement cap; the point is too close to pi/2 for the requested width")]
    CosineNearZero,
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncKind {
    Sin,
    Cos,
}

/// Which side of the true function an envelope polynomial bounds on (0, pi/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// A partial sum of the sin or cos Taylor series, with its bound direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub kind: TruncKind,
    pub order: u32,
    pub poly: Poly,
}

impl Truncation {
    /// Odd order bounds from below, even order from above, on (0, pi/2).
    pub fn bound_side(&self) -> BoundSide {
        if self.order % 2 == 1 {
            BoundSide::Lower
        } else {
            BoundSide::Upper
        }
    }
}

/// The exact partial-sum polynomial `u(x, order)` or `v(x, order)`.
pub fn truncation(kind: TruncKind, order: u32) -> Truncation {
    let deg = match kind {
        TruncKind::Sin => 2 * order as usize + 1,
        TruncKind::Cos => 2 * order as usize,
    };
    let mut coeffs = vec![Rat::zero(); deg + 1];
    let mut fact = BigInt::one();
    let mut fact_arg = 0u64;
    for k in 0..=order as usize {
        let power = match kind {
            TruncKind::Sin => 2 * k + 1,
            TruncKind::Cos => 2 * k,
        };
        while (fact_arg as usize) < power {
            fact_arg += 1;
            fact *= BigInt::from(fact_arg);
        }
        let mut c = Rat::new(BigInt::one(), fact.clone());
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[power] = c;
    }
    Truncation {
        kind,
        order,
        poly: Poly::from_rats(coeffs),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
    Tan,
    Cot,
}

/// Certifies `0 < x < pi/2` against a 128-bit enclosure of pi.
fn certify_domain(x: &Rat) -> Result<(), EnvelopeError> {
    if !x.is_positive() {
        return Err(EnvelopeError::OutsideDomain(x.to_string()));
    }
    let pi = pi_enclosure(128);
    let half_lo = pi.lo() / Rat::from_integer(BigInt::from(2));
    if *x >= half_lo {
        return Err(EnvelopeError::OutsideDomain(x.to_string()));
    }
    Ok(())
}

/// Alternating partial sums of sin or cos at an exact rational point,
/// bracketed by the first omitted term.
fn series_enclosure(kind: TruncKind, x: &Rat, target: &Rat) -> RatInterval {
    let x2 = x * x;
    // first term and its power index
    let (mut term, mut next_index) = match kind {
        TruncKind::Sin => (x.clone(), 1u64),
        TruncKind::Cos => (Rat::one(), 0u64),
    };
    let mut sum = Rat::zero();
    let mut add = true;
    loop {
        sum += if add { term.clone() } else { -term.clone() };
        add = !add;
        // next term: multiply by x^2 / ((n+1)(n+2)) where n is current power
        let denom = Rat::from_integer(BigInt::from((next_index + 1) * (next_index + 2)));
        term = term * &x2 / denom;
        next_index += 2;
        // terms decrease from the start on (0, pi/2); stop once the tail
        // bound meets the target
        if &term <= target {
            break;
        }
    }
    if add {
        RatInterval::new(sum.clone(), sum + term).expect("ordered endpoints")
    } else {
        RatInterval::new(&sum - &term, sum).expect("ordered endpoints")
    }
}

fn half_width(w: &Rat) -> Rat {
    w / Rat::from_integer(BigInt::from(2))
}

/// Rigorous enclosure of sin, cos, tan or cot at an exact rational point of
/// (0, pi/2), with final width at most `target_width`.
pub fn rigorous_trig(f: TrigFn, x: &Rat, target_width: &Rat) -> Result<RatInterval, EnvelopeError> {
    if !target_width.is_positive() {
        return Err(EnvelopeError::NonPositiveWidth);
    }
    certify_domain(x)?;
    match f {
        TrigFn::Sin => Ok(series_enclosure(TruncKind::Sin, x, &half_width(target_width))),
        TrigFn::Cos => Ok(series_enclosure(TruncKind::Cos, x, &half_width(target_width))),
        TrigFn::Tan | TrigFn::Cot => {
            // quotient widens the component widths; refine until the result
            // meets the target
            let mut w = half_width(target_width);
            for _ in 0..64 {
                let s = series_enclosure(TruncKind::Sin, x, &w);
                let c = series_enclosure(TruncKind::Cos, x, &w);
                let (num, den) = match f {
                    TrigFn::Tan => (&s, &c),
                    _ => (&c, &s),
                };
                if den.contains_zero() {
                    w = half_width(&w);
                    continue;
                }
                let q = num.div(den)?;
                if q.width() <= *target_width {
                    return Ok(q);
                }
                // shrink proportionally to the overshoot
                let ratio = q.width() / target_width;
                w = w / (ratio * Rat::from_integer(BigInt::from(4)));
            }
            Err(EnvelopeError::CosineNearZero)
        }
    }
}

/// Shared sin/cos enclosures for expression assembly in the scanner.
pub fn sin_cos_enclosures(
    x: &Rat,
    component_width: &Rat,
) -> Result<(RatInterval, RatInterval), EnvelopeError> {
    if !component_width.is_positive() {
        return Err(EnvelopeError::NonPositiveWidth);
    }
    certify_domain(x)?;
    Ok((
        series_enclosure(TruncKind::Sin, x, component_width),
        series_enclosure(TruncKind::Cos, x, component_width),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{pow2_neg, rat, rat_int};

    #[test]
    fn truncation_examples() {
        let u0 = truncation(TruncKind::Sin, 0);
        assert_eq!(u0.poly, Poly::from_rats(vec![rat_int(0), rat_int(1)]));
        assert_eq!(u0.bound_side(), BoundSide::Upper);

        let v1 = truncation(TruncKind::Cos, 1);
        assert_eq!(
            v1.poly,
            Poly::from_rats(vec![rat_int(1), rat_int(0), rat(-1, 2)])
        );
        assert_eq!(v1.bound_side(), BoundSide::Lower);

        let u2 = truncation(TruncKind::Sin, 2);
        assert_eq!(
            u2.poly,
            Poly::from_rats(vec![
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat(-1, 6),
                rat_int(0),
                rat(1, 120),
            ])
        );
        assert_eq!(u2.bound_side(), BoundSide::Upper);
    }

    #[test]
    fn sin_enclosure_at_one() {
        let iv = rigorous_trig(TrigFn::Sin, &rat_int(1), &pow2_neg(30)).unwrap();
        // sin 1 = 0.8414709848...
        assert!(iv.lo() >= &rat(8414709, 10000000));
        assert!(iv.hi() <= &rat(8414710, 10000000));
        // and the coarse partial sums bracket it: u(1,3) and u(1,2)
        assert!(iv.lo() > &rat(4241, 5040));
        assert!(iv.hi() < &rat(101, 120));
    }

    #[test]
    fn tan_enclosure_at_one() {
        let iv = rigorous_trig(TrigFn::Tan, &rat_int(1), &rat(1, 1_000_000)).unwrap();
        assert!(iv.width() <= rat(1, 1_000_000));
        // tan 1 = 1.5574077246...
        assert!(iv.lo() >= &rat(1557407, 1000000));
        assert!(iv.hi() <= &rat(1557409, 1000000));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            rigorous_trig(TrigFn::Sin, &rat_int(0), &rat(1, 10)),
            Err(EnvelopeError::OutsideDomain(_))
        ));
        assert!(matches!(
            rigorous_trig(TrigFn::Sin, &rat_int(2), &rat(1, 10)),
            Err(EnvelopeError::OutsideDomain(_))
        ));
        assert!(matches!(
            rigorous_trig(TrigFn::Sin, &rat_int(1), &rat_int(0)),
            Err(EnvelopeError::NonPositiveWidth)
        ));
    }

    #[test]
    fn cot_near_half_pi() {
        // pi/2 - 1/100 is fine for cot at moderate width
        let pi = pi_enclosure(128);
        let x = pi.lo() / rat_int(2) - rat(1, 100);
        let iv = rigorous_trig(TrigFn::Cot, &x, &pow2_neg(40)).unwrap();
        assert!(iv.is_strictly_positive());
        assert!(iv.width() <= pow2_neg(40));
    }
}
