//! Exact-arithmetic certificates for sharpened Wilker-type inequalities.
//!
//! The crate proves refinements of the Wilker inequality
//! `(sin x / x)^2 + tan x / x > 2` by reconstructing coefficient-positivity
//! certificates: each bounding rational function is rewritten through the
//! substitution `x -> 1/x`, cleared to integer (or `Z[pi]`) coefficients and
//! shifted, after which sign-uniform coefficient lists certify its sign on a
//! half-line. A separate scanner validates the inequalities numerically with
//! rational interval arithmetic, so every reported comparison is itself a
//! small machine proof.
//!
//! Modules follow the pipeline from the ground up:
//!
//! * [`exactnum`] — arbitrary-precision rationals, rational intervals and
//!   arbitrarily tight enclosures of pi,
//! * [`polyring`] — the coefficient ring `Q[pi, 1/pi]` and dense univariate
//!   polynomials over it,
//! * [`ratfunc`] — quotients of polynomials with factored denominators,
//! * [`envelope`] — Taylor truncations of sin/cos and rigorous evaluation of
//!   sin, cos, tan and cot on (0, pi/2),
//! * [`certify`] — sign decisions, positivity certificates and the end-to-end
//!   verification pipeline,
//! * [`theorems`] — the concrete inequality instances and side conditions,
//! * [`numscan`] — rigorous grid scans, limit checks and the monotonicity
//!   spot-check.

pub mod certify;
pub mod envelope;
pub mod exactnum;
pub mod numscan;
pub mod polyring;
pub mod ratfunc;
pub mod theorems;

pub use certify::{decide_sign, prove_positive_on, verify_inequality, CertificateReport, Verdict};
pub use exactnum::{pi_enclosure, Rat, RatInterval};
pub use polyring::{PiCoeff, Poly};
pub use ratfunc::RatFunc;
pub use theorems::{build_spec, TheoremId};
