//! Sign decisions, coefficient-positivity certificates, and the end-to-end
//! verification pipeline.
//!
//! The certificate idea: to show a polynomial `p` keeps one sign on
//! `(0, 1/s)`, lift it through `x -> 1/x` (so the claim becomes a half-line
//! `x >= s`), clear denominators and negative pi-powers, Taylor-shift by `s`,
//! and decide the sign of every coefficient. A sign-uniform coefficient list
//! is a sound (not complete) proof: the polynomial cannot change sign on the
//! half-line, and `pi > 0`, `x > 0` make the clearing steps sign-transparent.
//!
//! Signs of `Q[pi]` coefficients are decided against nested rational
//! enclosures of pi of doubling precision, so a decision never flips as the
//! precision cap grows.

use crate::exactnum::{format_rat, pi_enclosure, NumError, Rat};
use crate::polyring::{PiCoeff, Poly, PolyError};
use crate::ratfunc::RfError;
use crate::theorems::{Direction, InequalitySpec, SideCondition, SideConditionKind, TheoremId};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("`{0}` is a numeric-only instance; use the scanner instead")]
    NumericOnly(TheoremId),
    #[error("direction bookkeeping violated an internal invariant: {0}")]
    InternalInvariant(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Rf(#[from] RfError),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignValue {
    Positive,
    Negative,
    Zero,
    Unknown,
}

/// A decided sign together with the pi precision that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sign {
    pub value: SignValue,
    pub pi_bits_used: u32,
}

/// Decides the sign of a `Q[pi, 1/pi]` element by evaluating it over
/// enclosures of pi at 8, 16, 32, ... bits up to `max_bits`.
///
/// Exactly-rational elements are decided without any enclosure
/// (`pi_bits_used = 0`); `Zero` is returned only for the syntactic zero.
/// `Unknown` is a value, not an error: it reports the refinement cap.
pub fn decide_sign(c: &PiCoeff, max_bits: u32) -> Sign {
    if c.is_zero() {
        return Sign {
            value: SignValue::Zero,
            pi_bits_used: 0,
        };
    }
    if let Some(r) = c.as_rational() {
        return Sign {
            value: if r.is_positive() {
                SignValue::Positive
            } else {
                SignValue::Negative
            },
            pi_bits_used: 0,
        };
    }
    let mut bits = 8u32;
    let mut last = 8u32;
    while bits <= max_bits {
        let pi = pi_enclosure(bits);
        // any honest enclosure of pi is positive, so eval cannot fail
        let iv = c.eval(&pi).expect("pi enclosure excludes zero");
        if iv.is_strictly_positive() {
            return Sign {
                value: SignValue::Positive,
                pi_bits_used: bits,
            };
        }
        if iv.is_strictly_negative() {
            return Sign {
                value: SignValue::Negative,
                pi_bits_used: bits,
            };
        }
        last = bits;
        bits = bits.saturating_mul(2);
    }
    Sign {
        value: SignValue::Unknown,
        pi_bits_used: last,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proven,
    Refuted,
    Inconclusive,
}

/// Machine-checkable evidence that a polynomial is sign-uniform on a
/// half-line `x >= domain_shift` after clearing and Taylor shift.
///
/// `lifted_shifted` is stored in positive normal form: when the underlying
/// coefficients are uniformly nonpositive, it holds the negated polynomial
/// and `negated` records the global sign. `coefficient_signs` are the decided
/// signs of the un-negated shifted coefficients.
#[derive(Debug, Clone)]
pub struct PositivityCertificate {
    pub claim_poly: Poly,
    pub domain_shift: Rat,
    /// Cleared claim before the shift: `claim * pi^k * clearing`.
    pub cleared: Poly,
    pub lifted_shifted: Poly,
    pub clearing: Rat,
    pub pi_normalization_power: i64,
    pub negated: bool,
    pub coefficient_signs: Vec<Sign>,
    pub verdict: Verdict,
    pub offending_index: Option<usize>,
    pub pi_bits_used: u32,
}

impl PositivityCertificate {
    /// The uniform sign of the claim on the half-line, when decided.
    pub fn uniform_sign(&self) -> Option<SignValue> {
        match self.verdict {
            Verdict::Proven => Some(SignValue::Positive),
            Verdict::Refuted if self.negated => Some(SignValue::Negative),
            _ => None,
        }
    }
}

/// Certifies the sign of `claim` (already living on the reciprocal side) for
/// all `x >= shift`: pi-normalize, clear content, shift by `shift`, decide
/// every coefficient.
///
/// The verdict speaks about the positivity claim: `Proven` for uniformly
/// nonnegative coefficients (at least one positive), `Refuted` for uniformly
/// nonpositive (the claim is definitively false: the value is negative on
/// the whole half-line), `Inconclusive` for mixed or undecided signs.
pub fn certify_on_ray(claim: &Poly, shift: &Rat, max_bits: u32) -> PositivityCertificate {
    let k = -claim.min_pi_exponent().unwrap_or(0).min(0);
    let (cleared, sigma) = claim.mul_pi_pow(k).clear_content();
    let shifted = cleared.compose_linear(
        &PiCoeff::from_rat(shift.clone()),
        &PiCoeff::from_rat(Rat::one()),
    );
    let signs: Vec<Sign> = shifted
        .coeffs()
        .iter()
        .map(|c| decide_sign(c, max_bits))
        .collect();
    let pi_bits_used = signs.iter().map(|s| s.pi_bits_used).max().unwrap_or(0);

    let mut saw_pos = None;
    let mut saw_neg = None;
    let mut saw_unknown = None;
    for (i, s) in signs.iter().enumerate() {
        match s.value {
            SignValue::Positive => saw_pos = saw_pos.or(Some(i)),
            SignValue::Negative => saw_neg = saw_neg.or(Some(i)),
            SignValue::Unknown => saw_unknown = saw_unknown.or(Some(i)),
            SignValue::Zero => {}
        }
    }
    let (verdict, negated, offending_index) = match (saw_pos, saw_neg, saw_unknown) {
        (_, _, Some(i)) => (Verdict::Inconclusive, false, Some(i)),
        (Some(_), None, None) => (Verdict::Proven, false, None),
        (None, Some(i), None) => (Verdict::Refuted, true, Some(i)),
        (Some(i), Some(j), None) => (Verdict::Inconclusive, false, Some(i.max(j))),
        // all-zero coefficients: the zero polynomial is not positive anywhere
        (None, None, None) => (Verdict::Refuted, false, None),
    };
    let lifted_shifted = if negated { -&shifted } else { shifted };
    PositivityCertificate {
        claim_poly: claim.clone(),
        domain_shift: shift.clone(),
        cleared,
        lifted_shifted,
        clearing: sigma,
        pi_normalization_power: k,
        negated,
        coefficient_signs: signs,
        verdict,
        offending_index,
        pi_bits_used,
    }
}

/// Certificate for `p(t) > 0` on `(0, 1/s)` (all `t > 0` when `s = 0`):
/// reciprocal-lift `p` by its own degree, then certify on the ray `x >= s`.
///
/// Sound but not complete: `Inconclusive` does not disprove the claim.
pub fn prove_positive_on(p: &Poly, shift: &Rat, max_bits: u32) -> PositivityCertificate {
    let lifted = p
        .reciprocal_lift(p.degree().unwrap_or(0))
        .expect("lift by own degree cannot fail");
    let mut cert = certify_on_ray(&lifted, shift, max_bits);
    cert.claim_poly = p.clone();
    cert
}

/// Outcome of one side condition.
#[derive(Debug, Clone)]
pub struct SideConditionReport {
    pub description: String,
    pub kind: String,
    pub verdict: Verdict,
    pub pi_bits_used: u32,
    pub certificate: Option<PositivityCertificate>,
    pub sign: Option<Sign>,
}

/// A certified denominator factor of the lifted bounding expression.
#[derive(Debug, Clone)]
pub struct FactorReport {
    pub multiplicity: u32,
    pub certificate: PositivityCertificate,
}

/// The full machine-checkable record of one inequality verification.
#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub theorem_id: TheoremId,
    pub shift: Rat,
    /// Power of `x` left in the denominator after the reciprocal lift.
    pub lift_exponent: i64,
    pub common_lift: usize,
    /// Rational part of the normalization scalar; its pi power is
    /// `pi_normalization_power`.
    pub scalar: Rat,
    pub pi_normalization_power: i64,
    pub numerator_negated: bool,
    /// The lifted, cleared, shifted numerator in positive normal form.
    pub numerator: Poly,
    pub numerator_certificate: PositivityCertificate,
    pub denominator_factors: Vec<FactorReport>,
    pub side_conditions: Vec<SideConditionReport>,
    pub verdict: Verdict,
    pub pi_bits_used: u32,
    pub elapsed: Duration,
}

fn check_side_condition(cond: &SideCondition, max_bits: u32) -> SideConditionReport {
    match &cond.kind {
        SideConditionKind::PolyPositiveOn { poly, shift } => {
            let cert = prove_positive_on(poly, shift, max_bits);
            SideConditionReport {
                description: cond.description.clone(),
                kind: "poly-positive-on".to_string(),
                verdict: cert.verdict,
                pi_bits_used: cert.pi_bits_used,
                certificate: Some(cert),
                sign: None,
            }
        }
        SideConditionKind::PiSign { coeff, expected } => {
            let sign = decide_sign(coeff, max_bits);
            let verdict = if sign.value == *expected {
                Verdict::Proven
            } else if sign.value == SignValue::Unknown {
                Verdict::Inconclusive
            } else {
                Verdict::Refuted
            };
            SideConditionReport {
                description: cond.description.clone(),
                kind: "pi-sign".to_string(),
                verdict,
                pi_bits_used: sign.pi_bits_used,
                certificate: None,
                sign: Some(sign),
            }
        }
    }
}

fn sign_as_unit(v: SignValue) -> Option<i32> {
    match v {
        SignValue::Positive => Some(1),
        SignValue::Negative => Some(-1),
        _ => None,
    }
}

/// Runs the whole pipeline for one inequality instance.
///
/// Side conditions are discharged first; the bounding difference is pushed
/// through `x -> 1/x`, its numerator and denominator factors are certified
/// sign-uniform on `x >= shift`, and the directions are combined into the
/// final verdict. The report records the reconstructed certificate tables
/// and the normalization constants.
pub fn verify_inequality(
    spec: &InequalitySpec,
    max_bits: u32,
) -> Result<CertificateReport, CertifyError> {
    let start = Instant::now();
    if spec.numeric_only {
        return Err(CertifyError::NumericOnly(spec.id));
    }
    let bound = spec
        .bound_difference
        .as_ref()
        .ok_or_else(|| CertifyError::InternalInvariant("missing bound difference".into()))?;

    let side_conditions: Vec<SideConditionReport> = spec
        .side_conditions
        .iter()
        .map(|c| check_side_condition(c, max_bits))
        .collect();

    let lifted = bound.reciprocal_sub()?;

    // numerator: certify on the ray and read off the normalization
    let num_cert = certify_on_ray(&lifted.numerator, &spec.shift, max_bits);

    // denominator factors: certify each cleared factor on the same ray
    let mut factor_reports = Vec::with_capacity(lifted.den_factors.len());
    let mut clearing_product = Rat::one();
    let mut factor_pi_power = 0i64;
    for f in &lifted.den_factors {
        let cert = certify_on_ray(&f.base, &spec.shift, max_bits);
        for _ in 0..f.multiplicity {
            clearing_product *= &cert.clearing;
            factor_pi_power += cert.pi_normalization_power;
        }
        factor_reports.push(FactorReport {
            multiplicity: f.multiplicity,
            certificate: cert,
        });
    }

    let scalar = &num_cert.clearing / &clearing_product;
    let scalar_pi_power = num_cert.pi_normalization_power - factor_pi_power;
    if scalar.is_negative() || scalar.is_zero() {
        return Err(CertifyError::InternalInvariant(
            "normalization scalar must be positive".into(),
        ));
    }

    // combine signs: bound = numerator / (scalar * pi^k * x^e * factors)
    let mut undecided = false;
    let mut overall = match num_cert.uniform_sign().and_then(sign_as_unit) {
        Some(s) => s,
        None => {
            undecided = true;
            0
        }
    };
    for fr in &factor_reports {
        match fr.certificate.uniform_sign().and_then(sign_as_unit) {
            Some(s) => {
                if fr.multiplicity % 2 == 1 {
                    overall *= s;
                }
            }
            None => undecided = true,
        }
    }
    let side_ok = side_conditions.iter().all(|s| s.verdict == Verdict::Proven);
    let side_refuted = side_conditions.iter().any(|s| s.verdict == Verdict::Refuted);

    let expected = match spec.direction {
        Direction::MustBeNegative => -1,
        Direction::MustBePositive => 1,
    };
    let verdict = if undecided || (!side_ok && !side_refuted) {
        Verdict::Inconclusive
    } else if side_refuted || overall != expected {
        Verdict::Refuted
    } else {
        Verdict::Proven
    };

    let pi_bits_used = side_conditions
        .iter()
        .map(|s| s.pi_bits_used)
        .chain(factor_reports.iter().map(|f| f.certificate.pi_bits_used))
        .chain([num_cert.pi_bits_used])
        .max()
        .unwrap_or(0);

    Ok(CertificateReport {
        theorem_id: spec.id,
        shift: spec.shift.clone(),
        lift_exponent: lifted.den_x_power,
        common_lift: lifted.common_lift,
        scalar,
        pi_normalization_power: scalar_pi_power,
        numerator_negated: num_cert.negated,
        numerator: num_cert.lifted_shifted.clone(),
        numerator_certificate: num_cert,
        denominator_factors: factor_reports,
        side_conditions,
        verdict,
        pi_bits_used,
        elapsed: start.elapsed(),
    })
}

// ---- serialization ----

fn poly_coeff_lists(p: &Poly) -> Vec<Vec<(i64, String)>> {
    p.coeffs()
        .iter()
        .map(|c| c.terms().map(|(e, r)| (e, format_rat(r))).collect())
        .collect()
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Proven => "proven",
        Verdict::Refuted => "refuted",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Serialize)]
struct FactorCertJson {
    cleared_coeffs: Vec<Vec<(i64, String)>>,
    shifted_coeffs: Vec<Vec<(i64, String)>>,
    clearing: String,
    verdict: &'static str,
    pi_bits_used: u32,
}

#[derive(Serialize)]
struct FactorJson {
    poly: String,
    multiplicity: u32,
    certificate: FactorCertJson,
}

#[derive(Serialize)]
struct SideConditionJson {
    description: String,
    kind: String,
    verdict: &'static str,
    sign: Option<&'static str>,
    pi_bits_used: u32,
}

#[derive(Serialize)]
struct ReportJson {
    theorem_id: String,
    shift: String,
    lift_exponent: i64,
    scalar: String,
    pi_normalization_power: i64,
    numerator_negated: bool,
    numerator_coeffs: Vec<Vec<(i64, String)>>,
    denominator_factors: Vec<FactorJson>,
    side_conditions: Vec<SideConditionJson>,
    verdict: &'static str,
    pi_bits_used: u32,
}

fn sign_str(v: SignValue) -> &'static str {
    match v {
        SignValue::Positive => "positive",
        SignValue::Negative => "negative",
        SignValue::Zero => "zero",
        SignValue::Unknown => "unknown",
    }
}

impl CertificateReport {
    /// Stable JSON rendering; field order is fixed and timing is kept out of
    /// the artifact so repeated runs are byte-identical.
    pub fn to_json(&self) -> String {
        let json = ReportJson {
            theorem_id: self.theorem_id.to_string(),
            shift: format_rat(&self.shift),
            lift_exponent: self.lift_exponent,
            scalar: format_rat(&self.scalar),
            pi_normalization_power: self.pi_normalization_power,
            numerator_negated: self.numerator_negated,
            numerator_coeffs: poly_coeff_lists(&self.numerator),
            denominator_factors: self
                .denominator_factors
                .iter()
                .map(|f| FactorJson {
                    poly: f.certificate.cleared.to_string(),
                    multiplicity: f.multiplicity,
                    certificate: FactorCertJson {
                        cleared_coeffs: poly_coeff_lists(&f.certificate.cleared),
                        shifted_coeffs: poly_coeff_lists(&f.certificate.lifted_shifted),
                        clearing: format_rat(&f.certificate.clearing),
                        verdict: verdict_str(f.certificate.verdict),
                        pi_bits_used: f.certificate.pi_bits_used,
                    },
                })
                .collect(),
            side_conditions: self
                .side_conditions
                .iter()
                .map(|s| SideConditionJson {
                    description: s.description.clone(),
                    kind: s.kind.clone(),
                    verdict: verdict_str(s.verdict),
                    sign: s.sign.map(|g| sign_str(g.value)),
                    pi_bits_used: s.pi_bits_used,
                })
                .collect(),
            verdict: verdict_str(self.verdict),
            pi_bits_used: self.pi_bits_used,
        };
        serde_json::to_string_pretty(&json).expect("report serialization cannot fail")
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("theorem: {}\n", self.theorem_id));
        out.push_str(&format!("verdict: {}\n", verdict_str(self.verdict)));
        out.push_str(&format!("shift: {}\n", format_rat(&self.shift)));
        out.push_str(&format!("lift exponent: {}\n", self.lift_exponent));
        let pi_part = match self.pi_normalization_power {
            0 => String::new(),
            1 => "*pi".to_string(),
            k => format!("*pi^{k}"),
        };
        out.push_str(&format!(
            "scalar: {}{}\n",
            format_rat(&self.scalar),
            pi_part
        ));
        out.push_str(&format!(
            "numerator ({}{} coefficients, {}): {}\n",
            self.numerator.coeffs().len(),
            if self.numerator_negated {
                ", globally negated"
            } else {
                ""
            },
            verdict_str(self.numerator_certificate.verdict),
            self.numerator.to_table_string(),
        ));
        for f in &self.denominator_factors {
            out.push_str(&format!(
                "denominator factor (multiplicity {}): {} -> shifted {}\n",
                f.multiplicity,
                f.certificate.cleared,
                f.certificate.lifted_shifted.to_table_string(),
            ));
        }
        for s in &self.side_conditions {
            out.push_str(&format!(
                "side condition [{}] {}: {}\n",
                s.kind,
                s.description,
                verdict_str(s.verdict)
            ));
        }
        out.push_str(&format!("pi bits used: {}\n", self.pi_bits_used));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn p(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_rats(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn decide_sign_examples() {
        // 172800 pi^4 - 17280 pi^6 = 17280 pi^4 (10 - pi^2) > 0
        let c = &PiCoeff::monomial(rat_int(172800), 4) - &PiCoeff::monomial(rat_int(17280), 6);
        let s = decide_sign(&c, 256);
        assert_eq!(s.value, SignValue::Positive);

        // heavy cancellation: 5253120 pi^6 - 58060800 pi^4 + 69120 pi^8
        let f12 = &(&PiCoeff::monomial(rat_int(5253120), 6)
            - &PiCoeff::monomial(rat_int(58060800), 4))
            + &PiCoeff::monomial(rat_int(69120), 8);
        let s = decide_sign(&f12, 256);
        assert_eq!(s.value, SignValue::Positive);
        assert!(s.pi_bits_used >= 16, "needs more than the first enclosure");

        assert_eq!(decide_sign(&PiCoeff::zero(), 256).value, SignValue::Zero);
        let r = decide_sign(&PiCoeff::from_rat(rat(-3, 7)), 256);
        assert_eq!(r.value, SignValue::Negative);
        assert_eq!(r.pi_bits_used, 0);
    }

    #[test]
    fn decide_sign_is_monotone_in_bits() {
        let c = &PiCoeff::monomial(rat_int(5253120), 6) - &PiCoeff::monomial(rat_int(58060800), 4);
        let c = &c + &PiCoeff::monomial(rat_int(69120), 8);
        let mut decided = None;
        for max_bits in [8u32, 16, 32, 64, 128, 256] {
            let s = decide_sign(&c, max_bits);
            match (decided, s.value) {
                (None, SignValue::Unknown) => {}
                (None, v) => decided = Some(v),
                (Some(prev), v) => assert_eq!(prev, v, "sign flipped at {max_bits} bits"),
            }
        }
        assert_eq!(decided, Some(SignValue::Positive));
    }

    #[test]
    fn prove_positive_examples() {
        // 1 + x on all t > 0
        let cert = prove_positive_on(&p(&[(1, 1), (1, 1)]), &Rat::zero(), 256);
        assert_eq!(cert.verdict, Verdict::Proven);
        assert!(!cert.negated);

        // x - 1/2 changes sign on (0, 1): lift+shift leaves mixed signs
        let cert = prove_positive_on(&p(&[(-1, 2), (1, 1)]), &rat_int(1), 256);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(cert.offending_index.is_some());
        // lift of (x - 1/2) by 1 is (1 - x/2); at (x+1): 1/2 - x/2
        assert_eq!(cert.cleared, p(&[(2, 1), (-1, 1)]));

        // uniformly negative: -(1 + x) is refuted as a positivity claim but
        // still certifies the negative sign
        let cert = prove_positive_on(&p(&[(-1, 1), (-1, 1)]), &Rat::zero(), 256);
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert!(cert.negated);
        assert_eq!(cert.uniform_sign(), Some(SignValue::Negative));
        assert_eq!(cert.lifted_shifted, p(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn shift_only_certificate_for_reciprocal_domain_claims() {
        // 120x^4 - 20x^2 + 1 > 0 for x >= 3, certified by the shift alone
        let f = p(&[(1, 1), (0, 1), (-20, 1), (0, 1), (120, 1)]);
        let cert = certify_on_ray(&f, &rat_int(3), 256);
        assert_eq!(cert.verdict, Verdict::Proven);
        assert_eq!(
            cert.lifted_shifted,
            p(&[(9541, 1), (12840, 1), (6460, 1), (1440, 1), (120, 1)])
        );

        // the same polynomial read as an original-domain claim on (0, 1/3)
        // is out of reach for the lift+shift certificate (mixed signs)
        let cert2 = prove_positive_on(&f, &rat_int(3), 256);
        assert_eq!(cert2.verdict, Verdict::Inconclusive);
    }
}
