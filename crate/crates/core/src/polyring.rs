//! The coefficient ring `Q[pi, 1/pi]` and dense univariate polynomials over it.
//!
//! [`PiCoeff`] is a Laurent polynomial in the symbol pi with rational
//! coefficients; negative exponents are allowed because the half-pi correction
//! terms contain `1/pi^3 .. 1/pi^6`. [`Poly`] is a dense polynomial in `x`
//! over that ring. The three transforms the certificate pipeline needs are
//! multiplication, composition with a linear argument (Taylor shift) and the
//! reciprocal lift `p(x) -> x^n p(1/x)`.

use crate::exactnum::{format_rat, NumError, Rat, RatInterval};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("reciprocal lift exponent {exponent} is smaller than the degree {degree}")]
    LiftExponentTooSmall { exponent: usize, degree: usize },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Element of `Q[pi, 1/pi]`: finite map from pi-exponent to a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiCoeff {
    terms: BTreeMap<i64, Rat>,
}

impl PiCoeff {
    pub fn zero() -> Self {
        PiCoeff::default()
    }

    pub fn one() -> Self {
        PiCoeff::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::monomial(r, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    /// `r * pi^exp`.
    pub fn monomial(r: Rat, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(exp, r);
        }
        PiCoeff { terms }
    }

    pub fn pi_pow(exp: i64) -> Self {
        Self::monomial(Rat::one(), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, r)| (*e, r))
    }

    /// The rational value when no pi power is present (zero counts).
    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_pi_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_pi_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert_add(&mut self, exp: i64, r: &Rat) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return PiCoeff::zero();
        }
        PiCoeff {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Multiply by `pi^k` (shift every exponent).
    pub fn mul_pi_pow(&self, k: i64) -> Self {
        PiCoeff {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Rigorous evaluation over an enclosure of pi.
    ///
    /// Negative exponents require `0` outside the pi interval (always true for
    /// any honest enclosure of pi, checked anyway).
    pub fn eval(&self, pi: &RatInterval) -> Result<RatInterval, NumError> {
        let mut acc = RatInterval::point(Rat::zero());
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                pi.pow(*e as u32)
            } else {
                pi.pow((-*e) as u32).recip()?
            };
            acc = acc.add(&p.scale(c));
        }
        Ok(acc)
    }
}

impl Add for &PiCoeff {
    type Output = PiCoeff;
    fn add(self, rhs: &PiCoeff) -> PiCoeff {
        let mut out = self.clone();
        for (e, r) in &rhs.terms {
            out.insert_add(*e, r);
        }
        out
    }
}

impl Sub for &PiCoeff {
    type Output = PiCoeff;
    fn sub(self, rhs: &PiCoeff) -> PiCoeff {
        let mut out = self.clone();
        for (e, r) in &rhs.terms {
            out.insert_add(*e, &-r.clone());
        }
        out
    }
}

impl Mul for &PiCoeff {
    type Output = PiCoeff;
    fn mul(self, rhs: &PiCoeff) -> PiCoeff {
        let mut out = PiCoeff::zero();
        for (ea, ra) in &self.terms {
            for (eb, rb) in &rhs.terms {
                out.insert_add(ea + eb, &(ra * rb));
            }
        }
        out
    }
}

impl Neg for &PiCoeff {
    type Output = PiCoeff;
    fn neg(self) -> PiCoeff {
        PiCoeff {
            terms: self.terms.iter().map(|(e, r)| (*e, -r.clone())).collect(),
        }
    }
}

impl fmt::Display for PiCoeff {
    /// Terms in increasing pi-exponent: `5/2 - 3pi + pi^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, r) in &self.terms {
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match e {
                0 => String::new(),
                1 => "pi".to_string(),
                _ => format!("pi^{e}"),
            };
            if var.is_empty() {
                write!(f, "{}", format_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}{var}", format_rat(&mag))?;
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial in `x` over [`PiCoeff`].
///
/// Invariant: the coefficient list is trimmed (no zero leading coefficient);
/// the zero polynomial is the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<PiCoeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(PiCoeff::one())
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![PiCoeff::zero(), PiCoeff::one()])
    }

    pub fn constant(c: PiCoeff) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn constant_rat(r: Rat) -> Self {
        Poly::constant(PiCoeff::from_rat(r))
    }

    pub fn from_coeffs(coeffs: Vec<PiCoeff>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from rational coefficients, `x^0` first.
    pub fn from_rats(coeffs: Vec<Rat>) -> Self {
        Poly::from_coeffs(coeffs.into_iter().map(PiCoeff::from_rat).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[PiCoeff] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> PiCoeff {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &PiCoeff) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&PiCoeff::from_rat(r.clone()))
    }

    pub fn mul_xpow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![PiCoeff::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `p(a + b x)` as an exact polynomial identity (Horner on `a + b x`).
    pub fn compose_linear(&self, a: &PiCoeff, b: &PiCoeff) -> Poly {
        let arg = Poly::from_coeffs(vec![a.clone(), b.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &arg) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `x^n p(1/x)`: coefficient `k` of the result is coefficient `n - k` of `p`.
    pub fn reciprocal_lift(&self, n: usize) -> Result<Poly, PolyError> {
        if let Some(d) = self.degree() {
            if n < d {
                return Err(PolyError::LiftExponentTooSmall {
                    exponent: n,
                    degree: d,
                });
            }
        }
        let mut coeffs = vec![PiCoeff::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.clone();
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Exact evaluation at a rational point; the result stays in `Q[pi, 1/pi]`.
    pub fn eval_rat(&self, t: &Rat) -> PiCoeff {
        let mut acc = PiCoeff::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(t) + c;
        }
        acc
    }

    /// Rigorous evaluation over intervals for `x` and pi (Horner).
    pub fn eval_interval(
        &self,
        x: &RatInterval,
        pi: &RatInterval,
    ) -> Result<RatInterval, NumError> {
        let mut acc = RatInterval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&c.eval(pi)?);
        }
        Ok(acc)
    }

    pub fn min_pi_exponent(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .filter_map(|c| c.min_pi_exponent())
            .min()
    }

    /// Multiply every coefficient by `pi^k`.
    pub fn mul_pi_pow(&self, k: i64) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.mul_pi_pow(k)).collect())
    }

    /// The positive rational `sigma` with `sigma * p` integral and content-free
    /// (gcd of all integer coefficients equal to one), together with the
    /// cleared polynomial. Zero polynomial returns `(0, 1)`.
    pub fn clear_content(&self) -> (Poly, Rat) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut lcm_den = BigInt::one();
        let mut gcd_num = BigInt::zero();
        for c in &self.coeffs {
            for (_, r) in c.terms() {
                lcm_den = lcm_den.lcm(r.denom());
                gcd_num = gcd_num.gcd(r.numer());
            }
        }
        if gcd_num.is_zero() {
            return (Poly::zero(), Rat::one());
        }
        let sigma = Rat::new(lcm_den, gcd_num);
        (self.scale_rat(&sigma), sigma)
    }

    /// Rendering used for the reconstructed certificate tables: terms in
    /// increasing x-power starting at `x`, with the constant term printed
    /// last, matching the layout the coefficient lists are published in.
    pub fn to_table_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(usize, &PiCoeff)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                parts.push((k, c));
            }
        }
        if !self.coeffs[0].is_zero() {
            parts.push((0, &self.coeffs[0]));
        }
        let mut out = String::new();
        for (i, (k, c)) in parts.iter().enumerate() {
            append_term(&mut out, i == 0, *k, c);
        }
        out
    }
}

fn append_term(out: &mut String, first: bool, power: usize, c: &PiCoeff) {
    let var = match power {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{power}"),
    };
    // single pi-free term renders without parentheses
    if let Some(r) = c.as_rational() {
        let neg = r.is_negative();
        let mag = r.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if var.is_empty() {
            out.push_str(&format_rat(&mag));
        } else if mag.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format_rat(&mag));
            out.push_str(&var);
        }
        return;
    }
    if c.terms().count() == 1 {
        let (e, r) = c.terms().next().unwrap();
        let neg = r.is_negative();
        let mag = r.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let pi_part = match e {
            1 => "pi".to_string(),
            _ => format!("pi^{e}"),
        };
        if !mag.is_one() {
            out.push_str(&format_rat(&mag));
        }
        out.push_str(&pi_part);
        out.push_str(&var);
        return;
    }
    if !first {
        out.push_str(" + ");
    }
    out.push('(');
    out.push_str(&c.to_string());
    out.push(')');
    out.push_str(&var);
}

impl fmt::Display for Poly {
    /// Terms in increasing x-power, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            append_term(&mut out, first, k, c);
            first = false;
        }
        write!(f, "{out}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(&self.coeff(i) - &rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![PiCoeff::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{pi_enclosure, rat, rat_int};

    fn p(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_rats(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn poly_mul_examples() {
        // (x+1)(x-1) = x^2 - 1
        let a = p(&[(1, 1), (1, 1)]);
        let b = p(&[(-1, 1), (1, 1)]);
        assert_eq!(&a * &b, p(&[(-1, 1), (0, 1), (1, 1)]));

        // (6x^2-1)(120x^4-20x^2+1) = 720x^6 - 240x^4 + 26x^2 - 1
        let f = p(&[(-1, 1), (0, 1), (6, 1)]);
        let g = p(&[(1, 1), (0, 1), (-20, 1), (0, 1), (120, 1)]);
        assert_eq!(
            &f * &g,
            p(&[(-1, 1), (0, 1), (26, 1), (0, 1), (-240, 1), (0, 1), (720, 1)])
        );

        // scale(x^2, pi) = pi x^2
        let x2 = p(&[(0, 1), (0, 1), (1, 1)]);
        let scaled = x2.scale(&PiCoeff::pi_pow(1));
        assert_eq!(scaled.coeff(2), PiCoeff::pi_pow(1));
    }

    #[test]
    fn compose_linear_examples() {
        let x2 = p(&[(0, 1), (0, 1), (1, 1)]);
        // x^2 at (1 + x): x^2 + 2x + 1
        assert_eq!(
            x2.compose_linear(&PiCoeff::from_int(1), &PiCoeff::from_int(1)),
            p(&[(1, 1), (2, 1), (1, 1)])
        );

        // 120x^4 - 20x^2 + 1 at (3 + x)
        let g = p(&[(1, 1), (0, 1), (-20, 1), (0, 1), (120, 1)]);
        assert_eq!(
            g.compose_linear(&PiCoeff::from_int(3), &PiCoeff::from_int(1)),
            p(&[(9541, 1), (12840, 1), (6460, 1), (1440, 1), (120, 1)])
        );

        // x^2 at (pi/2 - x): x^2 - pi x + pi^2/4
        let half_pi = PiCoeff::monomial(rat(1, 2), 1);
        let shifted = x2.compose_linear(&half_pi, &PiCoeff::from_int(-1));
        assert_eq!(shifted.coeff(0), PiCoeff::monomial(rat(1, 4), 2));
        assert_eq!(shifted.coeff(1), PiCoeff::monomial(rat(-1, 1), 1));
        assert_eq!(shifted.coeff(2), PiCoeff::one());
    }

    #[test]
    fn reciprocal_lift_examples() {
        // 1 - x^2/2 lifted by 2: x^2 - 1/2
        let v1 = p(&[(1, 1), (0, 1), (-1, 2)]);
        assert_eq!(
            v1.reciprocal_lift(2).unwrap(),
            p(&[(-1, 2), (0, 1), (1, 1)])
        );

        // x lifted by 1: 1
        assert_eq!(Poly::x().reciprocal_lift(1).unwrap(), Poly::one());

        // x - x^3/6 + x^5/120 lifted by 5: x^4 - x^2/6 + 1/120
        let u2 = p(&[(0, 1), (1, 1), (0, 1), (-1, 6), (0, 1), (1, 120)]);
        assert_eq!(
            u2.reciprocal_lift(5).unwrap(),
            p(&[(1, 120), (0, 1), (-1, 6), (0, 1), (1, 1)])
        );

        let e = u2.reciprocal_lift(3).unwrap_err();
        assert_eq!(
            e,
            PolyError::LiftExponentTooSmall {
                exponent: 3,
                degree: 5
            }
        );
    }

    #[test]
    fn eval_examples() {
        let pi = pi_enclosure(64);
        let x2 = p(&[(0, 1), (0, 1), (1, 1)]);
        let at = RatInterval::point(rat(1, 2));
        assert_eq!(
            x2.eval_interval(&at, &pi).unwrap(),
            RatInterval::point(rat(1, 4))
        );

        // pi * x over x = [1,1], pi = [3,4] -> [3,4]
        let px = Poly::from_coeffs(vec![PiCoeff::zero(), PiCoeff::pi_pow(1)]);
        let wide_pi = RatInterval::new(rat_int(3), rat_int(4)).unwrap();
        assert_eq!(
            px.eval_interval(&RatInterval::point(rat_int(1)), &wide_pi)
                .unwrap(),
            wide_pi
        );

        // x^2 - 1/2 over [0.7, 0.8] contains -0.01 and 0.14
        let f = p(&[(-1, 2), (0, 1), (1, 1)]);
        let iv = f
            .eval_interval(
                &RatInterval::new(rat(7, 10), rat(8, 10)).unwrap(),
                &pi,
            )
            .unwrap();
        assert!(iv.contains(&rat(-1, 100)));
        assert!(iv.contains(&rat(14, 100)));
    }

    #[test]
    fn clear_content_and_pi_normalization() {
        // x/6 - 1/4 -> sigma 12, cleared 2x - 3
        let f = p(&[(-1, 4), (1, 6)]);
        let (cleared, sigma) = f.clear_content();
        assert_eq!(sigma, rat_int(12));
        assert_eq!(cleared, p(&[(-3, 1), (2, 1)]));

        let g = Poly::from_coeffs(vec![
            PiCoeff::monomial(rat(1, 1), -3),
            PiCoeff::monomial(rat(2, 1), 1),
        ]);
        assert_eq!(g.min_pi_exponent(), Some(-3));
        let h = g.mul_pi_pow(3);
        assert_eq!(h.min_pi_exponent(), Some(0));
    }

    #[test]
    fn table_rendering() {
        let c = p(&[
            (389, 1),
            (2940, 1),
            (8670, 1),
            (12960, 1),
            (10440, 1),
            (4320, 1),
            (720, 1),
        ]);
        assert_eq!(
            c.to_table_string(),
            "2940x + 8670x^2 + 12960x^3 + 10440x^4 + 4320x^5 + 720x^6 + 389"
        );
    }
}
