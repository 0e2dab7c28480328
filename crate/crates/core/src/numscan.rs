//! Rigorous numeric validation: grid scans, the ratio function and its
//! limits, and the monotonicity spot-check.
//!
//! Every reported comparison is certified by rational interval arithmetic:
//! a row says `yes` only when the intervals separate strictly, `no` only when
//! they separate strictly the other way, and `undecided` when the enclosure
//! widths do not settle the question (after one automatic retry at width
//! `2^-80`).

use crate::envelope::{rigorous_trig, EnvelopeError, TrigFn};
use crate::exactnum::{
    format_rat, pi_enclosure, pow2_neg, rat, rat_int, NumError, Rat, RatInterval,
};
use crate::theorems::{build_spec, correction_terms, DomainEnd, TheoremId};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("grid [{from}, {to}] is outside the proven domain {domain} of {id}")]
    DomainViolation {
        id: TheoremId,
        domain: String,
        from: String,
        to: String,
    },
    #[error("a grid needs at least 2 steps, got {0}")]
    BadSteps(usize),
    #[error("eps must satisfy 0 < eps < 1/10, got {0}")]
    BadEps(String),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Grid description for one scan.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub theorem: TheoremId,
    pub from: Rat,
    pub to: Rat,
    pub steps: usize,
    pub trig_width: Rat,
}

pub const DEFAULT_STEPS: usize = 50;

/// Default trig enclosure width `2^-40`; undecided points retry at `2^-80`.
pub fn default_width() -> Rat {
    pow2_neg(40)
}

fn retry_width() -> Rat {
    pow2_neg(80)
}

/// The acceptance grids: thm1 on (0.02, 0.98), thm2-left on
/// (pi/2 - 0.32, pi/2 - 0.01), thm2-right on (pi/2 - 0.49, pi/2 - 0.01),
/// wilker and sumner on (0.02, pi/2 - 0.02). Half-pi-relative points come
/// from the lower bound of a 128-bit pi enclosure.
impl ScanConfig {
    pub fn default_for(theorem: TheoremId) -> ScanConfig {
        let half_pi_lo = pi_enclosure(128).lo().clone() / rat_int(2);
        let (from, to) = match theorem {
            TheoremId::Thm1Left | TheoremId::Thm1Right => (rat(1, 50), rat(49, 50)),
            TheoremId::Thm2Left => (&half_pi_lo - rat(8, 25), &half_pi_lo - rat(1, 100)),
            TheoremId::Thm2Right => (&half_pi_lo - rat(49, 100), &half_pi_lo - rat(1, 100)),
            TheoremId::Wilker | TheoremId::Sumner => {
                (rat(1, 50), &half_pi_lo - rat(1, 50))
            }
        };
        ScanConfig {
            theorem,
            from,
            to,
            steps: DEFAULT_STEPS,
            trig_width: default_width(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Holds {
    Yes,
    No,
    Undecided,
}

/// One certified grid point.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub x: Rat,
    pub lhs: Option<RatInterval>,
    pub value: RatInterval,
    pub rhs: Option<RatInterval>,
    pub residual: RatInterval,
    pub holds: Holds,
}

struct PointEval {
    lhs: Option<RatInterval>,
    value: RatInterval,
    rhs: Option<RatInterval>,
    residual: RatInterval,
    holds: Holds,
}

/// Rigorous enclosure of
/// `((sin x / x)^2 + tan x / x - 2) / (x^3 tan x)`.
pub fn wilker_ratio(x: &Rat, width: &Rat) -> Result<RatInterval, ScanError> {
    let sin = rigorous_trig(TrigFn::Sin, x, width)?;
    let tan = rigorous_trig(TrigFn::Tan, x, width)?;
    ratio_from_parts(x, &sin, &tan).map_err(ScanError::from)
}

fn ratio_from_parts(
    x: &Rat,
    sin: &RatInterval,
    tan: &RatInterval,
) -> Result<RatInterval, NumError> {
    let inv_x = Rat::one() / x;
    let value = sin.scale(&inv_x).sqr().add(&tan.scale(&inv_x));
    let x3tan = tan.scale(&(x * x * x));
    value.add_rat(&-rat_int(2)).div(&x3tan)
}

fn sixteen_over_pi4(pi: &RatInterval) -> RatInterval {
    pi.pow(4)
        .recip()
        .expect("pi enclosure excludes zero")
        .scale(&rat_int(16))
}

fn cmp_lt(a: &RatInterval, b: &RatInterval) -> Option<bool> {
    match a.cmp_strict(b) {
        Some(Ordering::Less) => Some(true),
        Some(Ordering::Greater) => Some(false),
        _ => None,
    }
}

fn combine(checks: &[Option<bool>]) -> Holds {
    if checks.iter().any(|c| *c == Some(false)) {
        Holds::No
    } else if checks.iter().all(|c| *c == Some(true)) {
        Holds::Yes
    } else {
        Holds::Undecided
    }
}

fn eval_point(theorem: TheoremId, x: &Rat, width: &Rat) -> Result<PointEval, ScanError> {
    let corr = correction_terms();
    let pi = pi_enclosure(128);
    let sin = rigorous_trig(TrigFn::Sin, x, width)?;
    let tan = rigorous_trig(TrigFn::Tan, x, width)?;
    let inv_x = Rat::one() / x;
    let value = sin.scale(&inv_x).sqr().add(&tan.scale(&inv_x));
    let x3tan = tan.scale(&(x * x * x));
    let ratio = value.add_rat(&-rat_int(2)).div(&x3tan)?;
    let two = RatInterval::point(rat_int(2));

    let (lhs, rhs, residual, checks) = match theorem {
        TheoremId::Thm1Left | TheoremId::Thm1Right => {
            let ca = rat(8, 45)
                - corr
                    .a
                    .eval_rat(x)
                    .as_rational()
                    .expect("a(x) is pi-free");
            let cb = rat(8, 45)
                - corr
                    .b
                    .eval_rat(x)
                    .as_rational()
                    .expect("b(x) is pi-free");
            let lhs = x3tan.scale(&ca).add(&two);
            let rhs = x3tan.scale(&cb).add(&two);
            let lambda = ratio.add_rat(&-rat(8, 45));
            // the certified refinement chain: the corrected lower bound
            // stays below the refined one, which stays below the value
            let checks = vec![
                cmp_lt(&lhs, &rhs),
                cmp_lt(&rhs, &value),
                neg_check(&lambda),
            ];
            (Some(lhs), Some(rhs), lambda, checks)
        }
        TheoremId::Thm2Left | TheoremId::Thm2Right => {
            let k16 = sixteen_over_pi4(&pi);
            let cx = corr.c.eval_rat(x).eval(&pi)?;
            let dx = corr.d.eval_rat(x).eval(&pi)?;
            let lhs = x3tan.mul(&k16.add(&cx)).add(&two);
            let rhs = x3tan.mul(&k16.add(&dx)).add(&two);
            let mu = ratio.sub(&k16);
            let checks = vec![
                cmp_lt(&lhs, &value),
                cmp_lt(&value, &rhs),
                pos_check(&mu),
            ];
            (Some(lhs), Some(rhs), mu, checks)
        }
        TheoremId::Wilker => {
            let lambda = ratio.add_rat(&-rat(8, 45));
            let checks = vec![cmp_lt(&two, &value), neg_check(&lambda)];
            (Some(two), None, lambda, checks)
        }
        TheoremId::Sumner => {
            let k16 = sixteen_over_pi4(&pi);
            let lhs = x3tan.mul(&k16).add(&two);
            let rhs = x3tan.scale(&rat(8, 45)).add(&two);
            let lambda = ratio.add_rat(&-rat(8, 45));
            let checks = vec![
                cmp_lt(&lhs, &value),
                cmp_lt(&value, &rhs),
                neg_check(&lambda),
            ];
            (Some(lhs), Some(rhs), lambda, checks)
        }
    };
    Ok(PointEval {
        lhs,
        value,
        rhs,
        residual,
        holds: combine(&checks),
    })
}

fn neg_check(iv: &RatInterval) -> Option<bool> {
    if iv.is_strictly_negative() {
        Some(true)
    } else if iv.is_strictly_positive() {
        Some(false)
    } else {
        None
    }
}

fn pos_check(iv: &RatInterval) -> Option<bool> {
    neg_check(&iv.neg())
}

fn validate_domain(cfg: &ScanConfig) -> Result<(), ScanError> {
    let spec = build_spec(cfg.theorem);
    let pi = pi_enclosure(128);
    let half_lo = pi.lo() / rat_int(2);
    let half_hi = pi.hi() / rat_int(2);
    // conservative inclusion: compare against the pi bound that keeps the
    // check sound for the true endpoint
    let lo_ok = match &spec.domain.lo {
        DomainEnd::At(r) => cfg.from > *r,
        DomainEnd::HalfPiMinus(d) => cfg.from >= &half_hi - d,
    };
    let hi_ok = match &spec.domain.hi {
        DomainEnd::At(r) => cfg.to < *r,
        DomainEnd::HalfPiMinus(d) if d.is_zero() => cfg.to < half_lo,
        DomainEnd::HalfPiMinus(d) => cfg.to <= &half_lo - d,
    };
    if !lo_ok || !hi_ok || cfg.from >= cfg.to {
        return Err(ScanError::DomainViolation {
            id: cfg.theorem,
            domain: spec.domain.to_string(),
            from: format_rat(&cfg.from),
            to: format_rat(&cfg.to),
        });
    }
    Ok(())
}

/// Scans the theorem's inequality chain over an even grid.
///
/// Each point is evaluated at `trig_width` and retried once at `2^-80`
/// before being reported `undecided`. Rows are ordered by `x`.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>, ScanError> {
    if cfg.steps < 2 {
        return Err(ScanError::BadSteps(cfg.steps));
    }
    validate_domain(cfg)?;
    let step = (&cfg.to - &cfg.from) / rat_int((cfg.steps - 1) as i64);
    let mut rows = Vec::with_capacity(cfg.steps);
    for i in 0..cfg.steps {
        let x = &cfg.from + &step * rat_int(i as i64);
        let mut ev = eval_point(cfg.theorem, &x, &cfg.trig_width)?;
        if ev.holds == Holds::Undecided && cfg.trig_width > retry_width() {
            ev = eval_point(cfg.theorem, &x, &retry_width())?;
        }
        rows.push(ScanRow {
            x,
            lhs: ev.lhs,
            value: ev.value,
            rhs: ev.rhs,
            residual: ev.residual,
            holds: ev.holds,
        });
    }
    Ok(rows)
}

/// One certified limit comparison.
#[derive(Debug, Clone)]
pub struct LimitCheck {
    pub point: Rat,
    pub constant: &'static str,
    pub residual: RatInterval,
    pub tolerance: Rat,
    pub holds: Holds,
}

/// Limit validation near 0 and near pi/2.
#[derive(Debug, Clone)]
pub struct LimitsReport {
    pub near_zero: LimitCheck,
    pub near_half_pi: LimitCheck,
}

/// Certifies `|ratio(eps) - 8/45| < tol_zero` and
/// `|ratio(pi/2 - eps) - 16/pi^4| < tol_half_pi`.
pub fn check_limits(
    eps: &Rat,
    tol_zero: &Rat,
    tol_half_pi: &Rat,
    width: &Rat,
) -> Result<LimitsReport, ScanError> {
    if !eps.is_positive() || *eps >= rat(1, 10) {
        return Err(ScanError::BadEps(format_rat(eps)));
    }
    let pi = pi_enclosure(128);

    let near_zero = {
        let mut residual = wilker_ratio(eps, width)?.add_rat(&-rat(8, 45));
        let mut holds = abs_within(&residual, tol_zero);
        if holds == Holds::Undecided && *width > retry_width() {
            residual = wilker_ratio(eps, &retry_width())?.add_rat(&-rat(8, 45));
            holds = abs_within(&residual, tol_zero);
        }
        LimitCheck {
            point: eps.clone(),
            constant: "8/45",
            residual,
            tolerance: tol_zero.clone(),
            holds,
        }
    };

    let near_half_pi = {
        let point = pi.lo() / rat_int(2) - eps;
        let k16 = sixteen_over_pi4(&pi);
        let mut residual = wilker_ratio(&point, width)?.sub(&k16);
        let mut holds = abs_within(&residual, tol_half_pi);
        if holds == Holds::Undecided && *width > retry_width() {
            residual = wilker_ratio(&point, &retry_width())?.sub(&k16);
            holds = abs_within(&residual, tol_half_pi);
        }
        LimitCheck {
            point,
            constant: "16/pi^4",
            residual,
            tolerance: tol_half_pi.clone(),
            holds,
        }
    };

    Ok(LimitsReport {
        near_zero,
        near_half_pi,
    })
}

fn abs_within(iv: &RatInterval, tol: &Rat) -> Holds {
    let neg_tol = -tol.clone();
    if iv.lo() > &neg_tol && iv.hi() < tol {
        Holds::Yes
    } else if iv.lo() >= tol || iv.hi() <= &neg_tol {
        Holds::No
    } else {
        Holds::Undecided
    }
}

/// A consecutive-pair comparison from the monotonicity spot-check.
#[derive(Debug, Clone)]
pub struct MonotonicityPair {
    pub left: Rat,
    pub right: Rat,
    pub holds: Holds,
}

#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub pairs: Vec<MonotonicityPair>,
}

impl MonotonicityReport {
    pub fn all_decreasing(&self) -> bool {
        self.pairs.iter().all(|p| p.holds == Holds::Yes)
    }

    pub fn undecided_count(&self) -> usize {
        self.pairs
            .iter()
            .filter(|p| p.holds == Holds::Undecided)
            .count()
    }
}

/// Certifies `ratio(x_i) > ratio(x_{i+1})` for consecutive grid points.
///
/// Equal or out-of-order points can never certify a strict decrease and are
/// reported `undecided`. A single-point grid passes vacuously.
pub fn monotonicity_spotcheck(grid: &[Rat], width: &Rat) -> Result<MonotonicityReport, ScanError> {
    let mut values = Vec::with_capacity(grid.len());
    for x in grid {
        values.push(wilker_ratio(x, width)?);
    }
    let mut pairs = Vec::new();
    for i in 0..grid.len().saturating_sub(1) {
        let (l, r) = (&grid[i], &grid[i + 1]);
        let mut holds = match values[i + 1].cmp_strict(&values[i]) {
            Some(Ordering::Less) => Holds::Yes,
            Some(Ordering::Greater) => Holds::No,
            _ => Holds::Undecided,
        };
        if holds == Holds::Undecided && l < r && *width > retry_width() {
            let vl = wilker_ratio(l, &retry_width())?;
            let vr = wilker_ratio(r, &retry_width())?;
            holds = match vr.cmp_strict(&vl) {
                Some(Ordering::Less) => Holds::Yes,
                Some(Ordering::Greater) => Holds::No,
                _ => Holds::Undecided,
            };
        }
        pairs.push(MonotonicityPair {
            left: l.clone(),
            right: r.clone(),
            holds,
        });
    }
    Ok(MonotonicityReport { pairs })
}

/// Evenly spaced default grid for the monotonicity spot-check:
/// `points` rationals from 1/20 to pi/2 - 1/20.
pub fn default_monotonicity_grid(points: usize) -> Vec<Rat> {
    let half_pi_lo = pi_enclosure(128).lo().clone() / rat_int(2);
    let from = rat(1, 20);
    let to = half_pi_lo - rat(1, 20);
    let step = (&to - &from) / rat_int((points.max(2) - 1) as i64);
    (0..points)
        .map(|i| &from + &step * rat_int(i as i64))
        .collect()
}

// ---- rendering ----

fn holds_str(h: Holds) -> &'static str {
    match h {
        Holds::Yes => "yes",
        Holds::No => "no",
        Holds::Undecided => "undecided",
    }
}

fn opt_interval_cells(iv: &Option<RatInterval>) -> (String, String) {
    match iv {
        Some(iv) => (format_rat(iv.lo()), format_rat(iv.hi())),
        None => (String::new(), String::new()),
    }
}

/// CSV rendering with exact `p/q` cells plus a decimal convenience column.
pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(
        "x,lhs_lo,lhs_hi,val_lo,val_hi,rhs_lo,rhs_hi,residual_lo,residual_hi,holds,x_decimal\n",
    );
    for r in rows {
        let (lhs_lo, lhs_hi) = opt_interval_cells(&r.lhs);
        let (rhs_lo, rhs_hi) = opt_interval_cells(&r.rhs);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            format_rat(&r.x),
            lhs_lo,
            lhs_hi,
            format_rat(r.value.lo()),
            format_rat(r.value.hi()),
            rhs_lo,
            rhs_hi,
            format_rat(r.residual.lo()),
            format_rat(r.residual.hi()),
            holds_str(r.holds),
            crate::exactnum::rat_to_decimal(&r.x, 12),
        ));
    }
    out
}

#[derive(Serialize)]
struct RowJson {
    x: String,
    x_decimal: String,
    lhs: Option<[String; 2]>,
    value: [String; 2],
    rhs: Option<[String; 2]>,
    residual: [String; 2],
    holds: &'static str,
}

pub fn rows_to_json(rows: &[ScanRow]) -> String {
    let v: Vec<RowJson> = rows
        .iter()
        .map(|r| RowJson {
            x: format_rat(&r.x),
            x_decimal: crate::exactnum::rat_to_decimal(&r.x, 12),
            lhs: r
                .lhs
                .as_ref()
                .map(|iv| [format_rat(iv.lo()), format_rat(iv.hi())]),
            value: [format_rat(r.value.lo()), format_rat(r.value.hi())],
            rhs: r
                .rhs
                .as_ref()
                .map(|iv| [format_rat(iv.lo()), format_rat(iv.hi())]),
            residual: [format_rat(r.residual.lo()), format_rat(r.residual.hi())],
            holds: holds_str(r.holds),
        })
        .collect();
    serde_json::to_string_pretty(&v).expect("row serialization cannot fail")
}

impl LimitsReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in [&self.near_zero, &self.near_half_pi] {
            out.push_str(&format!(
                "|ratio({}) - {}| < {}: {} (residual in {})\n",
                format_rat(&c.point),
                c.constant,
                format_rat(&c.tolerance),
                holds_str(c.holds),
                crate::exactnum::interval_decimal(&c.residual, 12),
            ));
        }
        out
    }
}

impl MonotonicityReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.pairs {
            out.push_str(&format!(
                "ratio({}) > ratio({}): {}\n",
                crate::exactnum::rat_to_decimal(&p.left, 6),
                crate::exactnum::rat_to_decimal(&p.right, 6),
                holds_str(p.holds),
            ));
        }
        out.push_str(&format!(
            "strictly decreasing: {} ({} undecided)\n",
            self.all_decreasing(),
            self.undecided_count()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_at_one() {
        let iv = wilker_ratio(&rat_int(1), &pow2_neg(40)).unwrap();
        // 0.17046348... strictly between 16/pi^4 and 8/45
        assert!(iv.lo() > &rat(170463, 1000000));
        assert!(iv.hi() < &rat(170464, 1000000));
        let pi = pi_enclosure(128);
        let k16 = sixteen_over_pi4(&pi);
        assert_eq!(iv.cmp_strict(&k16), Some(Ordering::Greater));
        assert!(iv.hi() < &rat(8, 45));
    }

    #[test]
    fn ratio_near_zero_approaches_eight_fortyfifths() {
        let iv = wilker_ratio(&rat(1, 100), &pow2_neg(40)).unwrap();
        let dev = iv.add_rat(&-rat(8, 45));
        assert!(dev.hi().abs() < rat(1, 10000));
        assert!(dev.lo().abs() < rat(1, 10000));
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let mut cfg = ScanConfig::default_for(TheoremId::Thm1Left);
        cfg.to = rat_int(2);
        assert!(matches!(
            scan(&cfg),
            Err(ScanError::DomainViolation { .. })
        ));
        let mut cfg = ScanConfig::default_for(TheoremId::Thm1Left);
        cfg.steps = 1;
        assert!(matches!(scan(&cfg), Err(ScanError::BadSteps(1))));
    }

    #[test]
    fn small_scan_holds() {
        let cfg = ScanConfig {
            theorem: TheoremId::Thm1Left,
            from: rat(3, 10),
            to: rat(7, 10),
            steps: 5,
            trig_width: default_width(),
        };
        let rows = scan(&cfg).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.holds == Holds::Yes));
        // rows ordered by x
        for w in rows.windows(2) {
            assert!(w[0].x < w[1].x);
        }
    }

    #[test]
    fn monotonicity_on_a_coarse_grid() {
        let grid = vec![rat(3, 10), rat(8, 10), rat(13, 10)];
        let rep = monotonicity_spotcheck(&grid, &default_width()).unwrap();
        assert!(rep.all_decreasing());

        let single = monotonicity_spotcheck(&[rat(1, 2)], &default_width()).unwrap();
        assert!(single.pairs.is_empty());
        assert!(single.all_decreasing());

        let equal = monotonicity_spotcheck(&[rat_int(1), rat_int(1)], &default_width()).unwrap();
        assert_eq!(equal.pairs[0].holds, Holds::Undecided);
    }
}
