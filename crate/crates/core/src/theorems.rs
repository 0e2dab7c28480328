//! The concrete inequality instances: correction terms, bounding rational
//! functions, domains, and side conditions.
//!
//! Each symbolic instance bounds the difference between a corrected
//! Wilker-type bound and the true expression by a rational function in the
//! Taylor truncations; the envelope orders are fixed data, chosen so the
//! substitution bounds in the claimed direction. The two half-pi instances
//! are stated in the substituted variable (distance below pi/2), where cot
//! and cos take the roles of tan and sin.

use crate::envelope::{truncation, TruncKind};
use crate::exactnum::{rat, rat_int, Rat};
use crate::polyring::{PiCoeff, Poly};
use crate::ratfunc::{Factor, RatFunc};
use crate::certify::SignValue;
use num_traits::Zero;
use std::fmt;

/// Identifiers for the verifiable and numeric-only inequality instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Thm1Left,
    Thm1Right,
    Thm2Left,
    Thm2Right,
    Wilker,
    Sumner,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Thm1Left,
        TheoremId::Thm1Right,
        TheoremId::Thm2Left,
        TheoremId::Thm2Right,
        TheoremId::Wilker,
        TheoremId::Sumner,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Thm1Left => "thm1-left",
            TheoremId::Thm1Right => "thm1-right",
            TheoremId::Thm2Left => "thm2-left",
            TheoremId::Thm2Right => "thm2-right",
            TheoremId::Wilker => "wilker",
            TheoremId::Sumner => "sumner",
        }
    }

    /// Accepts hyphen and underscore spellings, plus the `-numeric` suffix
    /// for the two scan-only instances.
    pub fn parse(s: &str) -> Option<TheoremId> {
        match s.replace('_', "-").as_str() {
            "thm1-left" => Some(TheoremId::Thm1Left),
            "thm1-right" => Some(TheoremId::Thm1Right),
            "thm2-left" => Some(TheoremId::Thm2Left),
            "thm2-right" => Some(TheoremId::Thm2Right),
            "wilker" | "wilker-numeric" => Some(TheoremId::Wilker),
            "sumner" | "sumner-numeric" => Some(TheoremId::Sumner),
            _ => None,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Required sign of the bounding difference on its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    MustBeNegative,
    MustBePositive,
}

/// How the bounding function relates to the true difference it replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRelation {
    /// bound >= true difference (envelopes overestimate)
    UpperBound,
    /// bound <= true difference (envelopes underestimate)
    LowerBound,
}

/// One end of a domain interval; half-pi-relative ends stay symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainEnd {
    At(Rat),
    HalfPiMinus(Rat),
}

impl fmt::Display for DomainEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainEnd::At(r) => write!(f, "{}", crate::exactnum::format_rat(r)),
            DomainEnd::HalfPiMinus(r) if r.is_zero() => write!(f, "pi/2"),
            DomainEnd::HalfPiMinus(r) => {
                write!(f, "pi/2 - {}", crate::exactnum::format_rat(r))
            }
        }
    }
}

/// Open interval with exact (possibly half-pi-relative) endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainInterval {
    pub lo: DomainEnd,
    pub hi: DomainEnd,
}

impl fmt::Display for DomainInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// An auxiliary fact the main substitution depends on, independently
/// checkable by the certificate engine.
#[derive(Debug, Clone)]
pub struct SideCondition {
    pub description: String,
    pub kind: SideConditionKind,
}

#[derive(Debug, Clone)]
pub enum SideConditionKind {
    PolyPositiveOn { poly: Poly, shift: Rat },
    PiSign { coeff: PiCoeff, expected: SignValue },
}

/// A fully assembled inequality instance.
#[derive(Debug, Clone)]
pub struct InequalitySpec {
    pub id: TheoremId,
    pub domain: DomainInterval,
    pub bound_difference: Option<RatFunc>,
    pub direction: Direction,
    pub bound_relation: BoundRelation,
    pub shift: Rat,
    pub side_conditions: Vec<SideCondition>,
    pub numeric_only: bool,
}

/// The four correction polynomials of the refined bounds.
///
/// `a` and `b` correct the near-origin constant 8/45; `c` and `d` correct the
/// near-half-pi constant `16/pi^4` and are polynomials in `(pi/2 - x)` over
/// `Q[pi, 1/pi]`.
#[derive(Debug, Clone)]
pub struct CorrectionTerms {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

fn half_pi_minus_x() -> Poly {
    Poly::from_coeffs(vec![
        PiCoeff::monomial(rat(1, 2), 1),
        PiCoeff::from_int(-1),
    ])
}

/// `160/pi^5 - 16/pi^3`, the linear correction slope near pi/2.
pub fn c_slope() -> PiCoeff {
    &PiCoeff::monomial(rat_int(160), -5) - &PiCoeff::monomial(rat_int(16), -3)
}

/// `960/pi^6 - 96/pi^4`, the quadratic correction slope near pi/2.
pub fn d_slope() -> PiCoeff {
    &PiCoeff::monomial(rat_int(960), -6) - &PiCoeff::monomial(rat_int(96), -4)
}

pub fn correction_terms() -> CorrectionTerms {
    let a = Poly::from_rats(vec![Rat::zero(), Rat::zero(), rat(8, 945)]);
    let b = Poly::from_rats(vec![
        Rat::zero(),
        Rat::zero(),
        rat(8, 945),
        Rat::zero(),
        rat(-16, 14175),
    ]);
    let w = half_pi_minus_x();
    let c = w.scale(&c_slope());
    let d = &c + &(&w * &w).scale(&d_slope());
    CorrectionTerms { a, b, c, d }
}

fn u_poly(order: u32) -> Poly {
    truncation(TruncKind::Sin, order).poly
}

fn v_poly(order: u32) -> Poly {
    truncation(TruncKind::Cos, order).poly
}

fn x_pow(k: usize) -> Poly {
    Poly::one().mul_xpow(k)
}

fn poly_cond(desc: &str, poly: Poly, shift: Rat) -> SideCondition {
    SideCondition {
        description: desc.to_string(),
        kind: SideConditionKind::PolyPositiveOn { poly, shift },
    }
}

fn pi_cond(desc: &str, coeff: PiCoeff) -> SideCondition {
    SideCondition {
        description: desc.to_string(),
        kind: SideConditionKind::PiSign {
            coeff,
            expected: SignValue::Positive,
        },
    }
}

/// Near-origin bounding function: envelope replacement of
/// `2 + (8/45 - corr) x^3 tan x - ((sin x / x)^2 + tan x / x)`
/// with truncation orders `(tan_num, tan_den)` for the corrected term and
/// `(sq, quot_den)` for the subtracted pair.
fn origin_bound(corr: &Poly, tan_num: u32, tan_den: u32, sq: u32, quot_den: u32) -> RatFunc {
    let coeff = &Poly::constant_rat(rat(8, 45)) - corr;
    let t1_num = &(&coeff * &x_pow(3)) * &u_poly(tan_num);
    let t1 = RatFunc::with_den(t1_num, vec![Factor::new(v_poly(tan_den), 1)]).unwrap();
    let usq = u_poly(sq);
    let t2 = RatFunc::with_den(&usq * &usq, vec![Factor::new(Poly::x(), 2)]).unwrap();
    let t3 = RatFunc::with_den(
        u_poly(sq),
        vec![
            Factor::new(Poly::x(), 1),
            Factor::new(v_poly(quot_den), 1),
        ],
    )
    .unwrap();
    RatFunc::constant(rat_int(2)).add(&t1).sub(&t2).sub(&t3)
}

/// Half-pi bounding function in the substituted variable: envelope
/// replacement of
/// `2 + (16/pi^4 + corr) w^3 cot x - ((cos x / w)^2 + cot x / w)`,
/// `w = pi/2 - x`, with cos truncations `(cot_num, sq)` and sin truncations
/// `(cot_den, quot_den)`.
fn half_pi_bound(corr: &Poly, cot_num: u32, cot_den: u32, sq: u32, quot_den: u32) -> RatFunc {
    let w = half_pi_minus_x();
    let w3 = &(&w * &w) * &w;
    let coeff = &Poly::constant(PiCoeff::monomial(rat_int(16), -4)) + corr;
    let t1_num = &(&coeff * &w3) * &v_poly(cot_num);
    let t1 = RatFunc::with_den(t1_num, vec![Factor::new(u_poly(cot_den), 1)]).unwrap();
    let vsq = v_poly(sq);
    let t2 = RatFunc::with_den(&vsq * &vsq, vec![Factor::new(w.clone(), 2)]).unwrap();
    let t3 = RatFunc::with_den(
        v_poly(sq),
        vec![Factor::new(w, 1), Factor::new(u_poly(quot_den), 1)],
    )
    .unwrap();
    RatFunc::constant(rat_int(2)).add(&t1).sub(&t2).sub(&t3)
}

/// Builds the exact inequality instance for `id`.
pub fn build_spec(id: TheoremId) -> InequalitySpec {
    let corr = correction_terms();
    match id {
        TheoremId::Thm1Left => InequalitySpec {
            id,
            domain: DomainInterval {
                lo: DomainEnd::At(Rat::zero()),
                hi: DomainEnd::At(rat_int(1)),
            },
            bound_difference: Some(origin_bound(&corr.a, 4, 3, 3, 4)),
            direction: Direction::MustBeNegative,
            bound_relation: BoundRelation::UpperBound,
            shift: rat_int(1),
            side_conditions: vec![
                poly_cond("v(x,3) > 0 on (0,1)", v_poly(3), rat_int(1)),
                poly_cond("v(x,4) > 0 on (0,1)", v_poly(4), rat_int(1)),
                poly_cond("u(x,3) > 0 on (0,1)", u_poly(3), rat_int(1)),
                poly_cond(
                    "8/45 - a(x) > 0 on (0,1)",
                    &Poly::constant_rat(rat(8, 45)) - &corr.a,
                    rat_int(1),
                ),
            ],
            numeric_only: false,
        },
        TheoremId::Thm1Right => InequalitySpec {
            id,
            domain: DomainInterval {
                lo: DomainEnd::At(Rat::zero()),
                hi: DomainEnd::At(rat_int(1)),
            },
            bound_difference: Some(origin_bound(&corr.b, 5, 4, 6, 3)),
            // the certificate shows this lower bound of the difference is
            // itself negative; the scanner validates the resulting reversed
            // ordering of the refined bound pointwise
            direction: Direction::MustBeNegative,
            bound_relation: BoundRelation::LowerBound,
            shift: rat_int(1),
            side_conditions: vec![
                poly_cond("v(x,3) > 0 on (0,1)", v_poly(3), rat_int(1)),
                poly_cond("v(x,4) > 0 on (0,1)", v_poly(4), rat_int(1)),
                poly_cond("u(x,6) > 0 on (0,1)", u_poly(6), rat_int(1)),
                poly_cond(
                    "8/45 - b(x) > 0 on (0,1)",
                    &Poly::constant_rat(rat(8, 45)) - &corr.b,
                    rat_int(1),
                ),
            ],
            numeric_only: false,
        },
        TheoremId::Thm2Left => InequalitySpec {
            id,
            domain: DomainInterval {
                lo: DomainEnd::HalfPiMinus(rat(1, 3)),
                hi: DomainEnd::HalfPiMinus(Rat::zero()),
            },
            bound_difference: Some(half_pi_bound(
                &corr.c.compose_linear(&PiCoeff::monomial(rat(1, 2), 1), &PiCoeff::from_int(-1)),
                2,
                1,
                1,
                2,
            )),
            direction: Direction::MustBeNegative,
            bound_relation: BoundRelation::UpperBound,
            shift: rat_int(3),
            side_conditions: vec![
                poly_cond("u(x,1) > 0 on (0,1/3)", u_poly(1), rat_int(3)),
                poly_cond("u(x,2) > 0 on (0,1/3)", u_poly(2), rat_int(3)),
                poly_cond("v(x,1) > 0 on (0,1/3)", v_poly(1), rat_int(3)),
                pi_cond("160/pi^5 - 16/pi^3 > 0", c_slope()),
                pi_cond(
                    "3 pi - 2 > 0 (zero of pi x - 2 lies left of the ray)",
                    &PiCoeff::monomial(rat_int(3), 1) - &PiCoeff::from_int(2),
                ),
            ],
            numeric_only: false,
        },
        TheoremId::Thm2Right => InequalitySpec {
            id,
            domain: DomainInterval {
                lo: DomainEnd::HalfPiMinus(rat(1, 2)),
                hi: DomainEnd::HalfPiMinus(Rat::zero()),
            },
            bound_difference: Some(half_pi_bound(
                &corr.d.compose_linear(&PiCoeff::monomial(rat(1, 2), 1), &PiCoeff::from_int(-1)),
                1,
                2,
                2,
                1,
            )),
            direction: Direction::MustBePositive,
            bound_relation: BoundRelation::LowerBound,
            shift: rat_int(2),
            side_conditions: vec![
                poly_cond("u(x,1) > 0 on (0,1/2)", u_poly(1), rat_int(2)),
                poly_cond("u(x,2) > 0 on (0,1/2)", u_poly(2), rat_int(2)),
                poly_cond("v(x,2) > 0 on (0,1/2)", v_poly(2), rat_int(2)),
                pi_cond("160/pi^5 - 16/pi^3 > 0", c_slope()),
                pi_cond("960/pi^6 - 96/pi^4 > 0", d_slope()),
                pi_cond(
                    "2 pi - 2 > 0 (zero of pi x - 2 lies left of the ray)",
                    &PiCoeff::monomial(rat_int(2), 1) - &PiCoeff::from_int(2),
                ),
            ],
            numeric_only: false,
        },
        TheoremId::Wilker | TheoremId::Sumner => InequalitySpec {
            id,
            domain: DomainInterval {
                lo: DomainEnd::At(Rat::zero()),
                hi: DomainEnd::HalfPiMinus(Rat::zero()),
            },
            bound_difference: None,
            direction: Direction::MustBePositive,
            bound_relation: BoundRelation::LowerBound,
            shift: Rat::zero(),
            side_conditions: Vec::new(),
            numeric_only: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_rat;
    use num_traits::Signed;

    #[test]
    fn correction_term_values() {
        let corr = correction_terms();
        assert_eq!(
            corr.a.eval_rat(&rat_int(1)).as_rational(),
            Some(rat(8, 945))
        );
        assert_eq!(
            corr.b.eval_rat(&rat_int(1)).as_rational(),
            Some(rat(104, 14175))
        );
        // c vanishes at pi/2: composing with the constant argument pi/2
        // leaves the zero coefficient
        let at_half_pi = corr
            .c
            .compose_linear(&PiCoeff::monomial(rat(1, 2), 1), &PiCoeff::zero());
        assert!(at_half_pi.coeff(0).is_zero());
    }

    #[test]
    fn bound_difference_value_at_half() {
        let spec = build_spec(TheoremId::Thm1Left);
        let m = spec.bound_difference.unwrap();
        let val = m.eval_rat_exact(&rat(1, 2)).unwrap();
        assert!(val.is_negative());
        assert_eq!(
            val,
            parse_rat("-78445763983233763/16334021276284826419200").unwrap()
        );
    }

    #[test]
    fn spec_metadata() {
        assert_eq!(build_spec(TheoremId::Thm2Left).shift, rat_int(3));
        assert_eq!(build_spec(TheoremId::Thm2Right).shift, rat_int(2));
        assert!(build_spec(TheoremId::Wilker).numeric_only);
        assert!(build_spec(TheoremId::Sumner).numeric_only);
        assert!(!build_spec(TheoremId::Thm1Left).numeric_only);
        assert_eq!(TheoremId::parse("thm1_left"), Some(TheoremId::Thm1Left));
        assert_eq!(TheoremId::parse("wilker-numeric"), Some(TheoremId::Wilker));
        assert_eq!(TheoremId::parse("bogus"), None);
    }

    #[test]
    fn denominator_factor_lists_follow_the_construction_order() {
        let m = build_spec(TheoremId::Thm1Left).bound_difference.unwrap();
        let dens: Vec<(Option<usize>, u32)> = m
            .den_factors()
            .iter()
            .map(|f| (f.base.degree(), f.multiplicity))
            .collect();
        assert_eq!(dens, vec![(Some(6), 1), (Some(1), 2), (Some(8), 1)]);

        let p = build_spec(TheoremId::Thm2Left).bound_difference.unwrap();
        let dens: Vec<(Option<usize>, u32)> = p
            .den_factors()
            .iter()
            .map(|f| (f.base.degree(), f.multiplicity))
            .collect();
        assert_eq!(dens, vec![(Some(3), 1), (Some(1), 2), (Some(5), 1)]);
    }
}
