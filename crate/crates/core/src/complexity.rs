//! Closed-form scalar theory of the landscape: the complexity function
//! Theta_p, its thresholds E_inf and E_0, the semicircle log-potential Omega,
//! and the inequality family behind the pairwise concavity argument.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sign selector for the +/- branches of `h_poly` and `sigma_u_eigenvalues`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn f(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Result of the E_0 bisection.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub e_inf: f64,
    pub e_zero: f64,
    /// Final bisection bracket containing the root.
    pub bracket: (f64, f64),
    pub tol: f64,
}

/// E_inf(p) = 2 sqrt((p-1)/p), the threshold where the Hessian shift
/// reaches the spectral bulk.
pub fn e_infinity(p: u32) -> f64 {
    assert!(p >= 2, "e_infinity requires p >= 2");
    let p = f64::from(p);
    2.0 * ((p - 1.0) / p).sqrt()
}

/// J(u) for u <= -E_inf(p); the rate-function correction below the bulk edge.
pub fn j_function(p: u32, u: f64) -> Result<f64> {
    let e_inf = e_infinity(p);
    if u > -e_inf {
        return Err(Error::domain(format!(
            "j_function requires u <= -E_inf = {:.6}, got u = {u}",
            -e_inf
        )));
    }
    let disc = (u * u - e_inf * e_inf).max(0.0).sqrt();
    Ok(-u / (e_inf * e_inf) * disc - (-u + disc).ln() + e_inf.ln())
}

/// The three-branch complexity function Theta_p(u).
pub fn theta(p: u32, u: f64) -> f64 {
    let pf = f64::from(p);
    let half_log = 0.5 * (pf - 1.0).ln();
    if u >= 0.0 {
        return half_log;
    }
    let quad = (pf - 2.0) / (4.0 * (pf - 1.0)) * u * u;
    if u >= -e_infinity(p) {
        half_log - quad
    } else {
        half_log - quad - j_function(p, u).expect("u <= -E_inf on this branch")
    }
}

/// E_0(p): the unique zero of E -> Theta_p(-E) above E_inf, by bisection.
///
/// The initial upper bracket starts at 2 E_inf and doubles until the sign
/// flips; Theta_p(-E) decreases quadratically, so this terminates quickly.
pub fn e_zero(p: u32, tol: f64) -> Result<ThresholdReport> {
    if tol <= 0.0 {
        return Err(Error::domain("tol must be positive"));
    }
    let e_inf = e_infinity(p);
    let f = |e: f64| theta(p, -e);
    let mut lo = e_inf;
    let mut hi = 2.0 * e_inf;
    let mut expansions = 0usize;
    while f(hi) >= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::numerical(
                "no sign change found for Theta_p(-E) within expansion cap",
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() <= tol && (hi - lo) < tol.max(1e-15) * 100.0 {
            return Ok(ThresholdReport {
                e_inf,
                e_zero: mid,
                bracket: (lo, hi),
                tol,
            });
        }
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if f(mid).abs() <= tol {
        Ok(ThresholdReport {
            e_inf,
            e_zero: mid,
            bracket: (lo, hi),
            tol,
        })
    } else {
        Err(Error::numerical(format!(
            "bisection for E_0(p={p}) did not reach tol {tol}"
        )))
    }
}

/// Omega(x): the log-potential of the semicircle law on [-2, 2].
pub fn omega_fn(x: f64) -> f64 {
    let ax = x.abs();
    let base = x * x / 4.0 - 0.5;
    if ax <= 2.0 {
        base
    } else {
        let s = (x * x / 4.0 - 1.0).sqrt();
        base - ax / 2.0 * s + (s + ax / 2.0).ln()
    }
}

/// Integer power with exact sign handling (binary exponentiation).
pub fn ipow(r: f64, k: i32) -> f64 {
    r.powi(k)
}

/// A coefficient times r^k, with the term dropped when the coefficient
/// vanishes (guards 0 * r^k for negative k at r = 0).
pub(crate) fn term(coef: f64, r: f64, k: i32) -> f64 {
    if coef == 0.0 {
        0.0
    } else {
        coef * ipow(r, k)
    }
}

/// h(r) = p-2 + p r^{2p-2} +/- (p-2)(p-1) r^{p-2} -/+ (p-1)p r^p.
/// Positivity on (-1, 1) is what keeps the Sigma_U eigenvalues below 2(p-1)/p.
pub fn h_poly(p: u32, r: f64, sign: Sign) -> f64 {
    let pf = f64::from(p);
    let s = sign.f();
    pf - 2.0 + pf * ipow(r, 2 * p as i32 - 2) + s * (pf - 2.0) * (pf - 1.0) * ipow(r, p as i32 - 2)
        - s * (pf - 1.0) * pf * ipow(r, p as i32)
}

/// The two eigenvalues (Sigma_U,11 +/- Sigma_U,12) of the conditional value
/// covariance, via the closed-form quotient. Returned as (plus, minus).
pub fn sigma_u_eigenvalues(p: u32, r: f64) -> (f64, f64) {
    assert!(r > -1.0 && r < 1.0, "overlap must lie in (-1, 1)");
    let pf = f64::from(p);
    let s = pf * ipow(r, p as i32) - (pf - 1.0) * ipow(r, p as i32 - 2);
    let lam = |sig: f64| {
        (1.0 - ipow(r, 2 * p as i32 - 2) + sig * (pf - 1.0) * ipow(r, p as i32 - 2) * (1.0 - r * r))
            / (1.0 - sig * s)
    };
    (lam(1.0), lam(-1.0))
}

/// True iff the 2x2 Hessian of the pair rate function,
/// -Sigma_U(r)^{-1} + p/(2(p-1)) I, is negative definite.
pub fn g_r_concavity_check(p: u32, r: f64) -> bool {
    let pf = f64::from(p);
    let shift = pf / (2.0 * (pf - 1.0));
    let (lp, lm) = sigma_u_eigenvalues(p, r);
    // Sigma_U and its inverse share eigenvectors; the Hessian eigenvalues
    // are -1/lambda + shift.
    lp > 0.0 && lm > 0.0 && (-1.0 / lp + shift) < 0.0 && (-1.0 / lm + shift) < 0.0
}
