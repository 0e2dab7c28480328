//! Quotients of polynomials with explicitly factored denominators.
//!
//! Denominators are kept as factor lists with multiplicities rather than
//! expanded products: the certificate pipeline needs the factored shape to
//! certify each factor's sign on a half-line separately, and addition merges
//! denominators by least common multiple over syntactically equal factors, so
//! the factor lists stay exactly as the bounding expressions are built.
//! No polynomial gcd cancellation is ever performed.

use crate::exactnum::{NumError, Rat, RatInterval};
use crate::polyring::{PiCoeff, Poly, PolyError};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RfError {
    #[error("zero polynomial used as a denominator factor")]
    ZeroDenominatorFactor,
    #[error("division by a zero rational function")]
    DivisionByZero,
    #[error("evaluation hit a denominator zero at the given point")]
    PoleAtPoint,
    #[error("value is not pi-free")]
    NotRational,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A denominator factor with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub base: Poly,
    pub multiplicity: u32,
}

impl Factor {
    pub fn new(base: Poly, multiplicity: u32) -> Self {
        Factor { base, multiplicity }
    }

    fn expanded(&self) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..self.multiplicity {
            acc = &acc * &self.base;
        }
        acc
    }

    fn degree_total(&self) -> usize {
        self.base.degree().unwrap_or(0) * self.multiplicity as usize
    }
}

/// `num / prod(factors)`; an empty factor list denotes denominator one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Vec<Factor>,
}

impl RatFunc {
    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: Vec::new() }
    }

    pub fn constant(r: Rat) -> Self {
        RatFunc::from_poly(Poly::constant_rat(r))
    }

    pub fn with_den(num: Poly, den: Vec<Factor>) -> Result<Self, RfError> {
        if den.iter().any(|f| f.base.is_zero() || f.multiplicity == 0) {
            return Err(RfError::ZeroDenominatorFactor);
        }
        Ok(RatFunc { num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[Factor] {
        &self.den
    }

    pub fn den_expanded(&self) -> Poly {
        let mut acc = Poly::one();
        for f in &self.den {
            acc = &acc * &f.expanded();
        }
        acc
    }

    fn den_degree(&self) -> usize {
        self.den.iter().map(Factor::degree_total).sum()
    }

    /// Least common multiple of two factor lists: per-base maximum
    /// multiplicity, bases matched by syntactic equality, ordered as first
    /// encountered.
    fn den_union(a: &[Factor], b: &[Factor]) -> Vec<Factor> {
        let mut out: Vec<Factor> = a.to_vec();
        for f in b {
            match out.iter_mut().find(|g| g.base == f.base) {
                Some(g) => g.multiplicity = g.multiplicity.max(f.multiplicity),
                None => out.push(f.clone()),
            }
        }
        out
    }

    /// `union / own` as an expanded polynomial.
    fn cofactor(union: &[Factor], own: &[Factor]) -> Poly {
        let mut acc = Poly::one();
        for f in union {
            let have = own
                .iter()
                .find(|g| g.base == f.base)
                .map(|g| g.multiplicity)
                .unwrap_or(0);
            for _ in 0..(f.multiplicity - have) {
                acc = &acc * &f.base;
            }
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let den = Self::den_union(&self.den, &o.den);
        let num = &(&self.num * &Self::cofactor(&den, &self.den))
            + &(&o.num * &Self::cofactor(&den, &o.den));
        RatFunc { num, den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut den = self.den.clone();
        for f in &o.den {
            match den.iter_mut().find(|g| g.base == f.base) {
                Some(g) => g.multiplicity += f.multiplicity,
                None => den.push(f.clone()),
            }
        }
        RatFunc {
            num: &self.num * &o.num,
            den,
        }
    }

    pub fn div(&self, o: &Self) -> Result<Self, RfError> {
        if o.num.is_zero() {
            return Err(RfError::DivisionByZero);
        }
        let recip = RatFunc {
            num: o.den_expanded(),
            den: vec![Factor::new(o.num.clone(), 1)],
        };
        Ok(self.mul(&recip))
    }

    /// `f(a + b x)` componentwise.
    pub fn compose_linear(&self, a: &PiCoeff, b: &PiCoeff) -> Result<Self, RfError> {
        let mut den = Vec::with_capacity(self.den.len());
        for f in &self.den {
            let base = f.base.compose_linear(a, b);
            if base.is_zero() {
                return Err(RfError::ZeroDenominatorFactor);
            }
            den.push(Factor::new(base, f.multiplicity));
        }
        Ok(RatFunc {
            num: self.num.compose_linear(a, b),
            den,
        })
    }

    /// The substitution `x -> 1/x`, written with polynomial parts.
    ///
    /// Numerator and denominator are lifted with the common exponent
    /// `n = max(deg num, deg den)`; each denominator factor is lifted by its
    /// own degree and the surplus power of `x` is recorded in
    /// [`LiftedForm::den_x_power`] (`x^n > 0` on the half-lines of interest,
    /// so the lift is sign-transparent). Factors that lift to the constant
    /// one (pure powers of `x`) disappear into the recorded power.
    pub fn reciprocal_sub(&self) -> Result<LiftedForm, RfError> {
        let num_deg = self.num.degree().unwrap_or(0);
        let den_deg = self.den_degree();
        let n = num_deg.max(den_deg);
        let numerator = self.num.reciprocal_lift(n)?;
        let mut den_factors = Vec::with_capacity(self.den.len());
        for f in &self.den {
            let d = f.base.degree().unwrap_or(0);
            let lifted = f.base.reciprocal_lift(d)?;
            if lifted == Poly::one() {
                continue;
            }
            den_factors.push(Factor::new(lifted, f.multiplicity));
        }
        Ok(LiftedForm {
            numerator,
            den_x_power: n as i64 - den_deg as i64,
            den_factors,
            common_lift: n,
        })
    }

    /// Exact evaluation at a pi-free rational point.
    pub fn eval_rat_exact(&self, t: &Rat) -> Result<Rat, RfError> {
        let num = self.num.eval_rat(t).as_rational().ok_or(RfError::NotRational)?;
        let mut den = Rat::one();
        for f in &self.den {
            let b = f.base.eval_rat(t).as_rational().ok_or(RfError::NotRational)?;
            if b.is_zero() {
                return Err(RfError::PoleAtPoint);
            }
            for _ in 0..f.multiplicity {
                den *= &b;
            }
        }
        Ok(num / den)
    }

    /// Exact evaluation at a rational point, as a pair of `Q[pi, 1/pi]`
    /// values (numerator, denominator).
    pub fn eval_rat_parts(&self, t: &Rat) -> (PiCoeff, PiCoeff) {
        let num = self.num.eval_rat(t);
        let mut den = PiCoeff::one();
        for f in &self.den {
            let b = f.base.eval_rat(t);
            for _ in 0..f.multiplicity {
                den = &den * &b;
            }
        }
        (num, den)
    }

    /// Rigorous interval evaluation at a rational point.
    pub fn eval_interval(&self, t: &Rat, pi: &RatInterval) -> Result<RatInterval, RfError> {
        let x = RatInterval::point(t.clone());
        let num = self.num.eval_interval(&x, pi)?;
        let mut den = RatInterval::point(Rat::one());
        for f in &self.den {
            let b = f.base.eval_interval(&x, pi)?;
            den = den.mul(&b.pow(f.multiplicity));
        }
        Ok(num.div(&den)?)
    }
}

/// Result of [`RatFunc::reciprocal_sub`]:
/// `f(1/x) = numerator / (x^den_x_power * prod(den_factors))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedForm {
    pub numerator: Poly,
    pub den_x_power: i64,
    pub den_factors: Vec<Factor>,
    pub common_lift: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    fn p(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_rats(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn add_combines_over_the_factor_lcm() {
        // 1/x + 1/x = 2/x: one factor x with multiplicity 1, numerator 2
        let one_over_x = RatFunc::with_den(Poly::one(), vec![Factor::new(Poly::x(), 1)]).unwrap();
        let s = one_over_x.add(&one_over_x);
        assert_eq!(s.num(), &p(&[(2, 1)]));
        assert_eq!(s.den_factors(), &[Factor::new(Poly::x(), 1)]);
    }

    #[test]
    fn sub_of_equal_constants_is_zero() {
        let two = RatFunc::constant(rat_int(2));
        let z = two.sub(&two);
        assert!(z.num().is_zero());
        assert!(z.den_factors().is_empty());
    }

    #[test]
    fn mul_is_structural() {
        // x^3 * (x - x^3/6)/(1 - x^2/2) keeps the denominator factor intact
        let u1 = p(&[(0, 1), (1, 1), (0, 1), (-1, 6)]);
        let v1 = p(&[(1, 1), (0, 1), (-1, 2)]);
        let f = RatFunc::with_den(u1.clone(), vec![Factor::new(v1.clone(), 1)]).unwrap();
        let x3 = RatFunc::from_poly(p(&[(0, 1), (0, 1), (0, 1), (1, 1)]));
        let g = x3.mul(&f);
        assert_eq!(g.den_factors(), &[Factor::new(v1, 1)]);
        assert_eq!(g.num(), &(&p(&[(0, 1), (0, 1), (0, 1), (1, 1)]) * &u1));
    }

    #[test]
    fn compose_linear_identity_and_constant() {
        let u1 = p(&[(0, 1), (1, 1), (0, 1), (-1, 6)]);
        let f = RatFunc::with_den(u1, vec![Factor::new(Poly::x(), 2)]).unwrap();
        let id = f
            .compose_linear(&PiCoeff::zero(), &PiCoeff::from_int(1))
            .unwrap();
        assert_eq!(id, f);

        let c = RatFunc::constant(rat(7, 3));
        let cc = c
            .compose_linear(&PiCoeff::from_int(5), &PiCoeff::from_int(-1))
            .unwrap();
        assert_eq!(cc, c);
    }

    #[test]
    fn reciprocal_sub_examples() {
        // f = x -> 1/x
        let f = RatFunc::from_poly(Poly::x());
        let lf = f.reciprocal_sub().unwrap();
        assert_eq!(lf.numerator, Poly::one());
        assert_eq!(lf.den_x_power, 1);
        assert!(lf.den_factors.is_empty());

        // f = (x^2+1)/x is self-reciprocal: g(t) = f(1/t) = (1+t^2)/t
        let g = RatFunc::with_den(p(&[(1, 1), (0, 1), (1, 1)]), vec![Factor::new(Poly::x(), 1)])
            .unwrap();
        let lg = g.reciprocal_sub().unwrap();
        assert_eq!(lg.numerator, p(&[(1, 1), (0, 1), (1, 1)]));
        assert_eq!(lg.den_x_power, 1);
        assert!(lg.den_factors.is_empty());
        assert_eq!(lg.common_lift, 2);
        // evaluation check at t = 2: (1 + 4)/2 = 5/2
        assert_eq!(g.eval_rat_exact(&rat_int(2)).unwrap(), rat(5, 2));

        // constants are fixed points
        let two = RatFunc::constant(rat_int(2));
        let lt = two.reciprocal_sub().unwrap();
        assert_eq!(lt.numerator, p(&[(2, 1)]));
        assert_eq!(lt.den_x_power, 0);
    }

    #[test]
    fn division_errors() {
        let zero = RatFunc::from_poly(Poly::zero());
        let one = RatFunc::constant(rat_int(1));
        assert_eq!(one.div(&zero).unwrap_err(), RfError::DivisionByZero);
    }
}
