//! Conditional covariance structure of the Hessian pair at overlap r: the
//! coefficient family a_1..a_4, b_1..b_4, the matrices Sigma_U, Sigma_Z,
//! Sigma_Q, the mean shifts m_1, m_2, and the pair-density prefactors
//! C_N, G(r), F(r).
//!
//! Every entry is evaluated from the literal defining expressions (no
//! algebraic simplification) so the code can be audited term by term; the
//! Schur-complement oracle in [`crate::oracle`] independently validates the
//! whole structure.

use crate::complexity::{ipow, term};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

/// The eight scalar coefficients at fixed (p, r).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
}

/// The conditional covariance structure at fixed (p, r, u1, u2):
/// Sigma_U (values), Sigma_Z (off-corner column), Sigma_Q (corner), and the
/// corner mean shifts m1, m2. All 2x2 blocks are symmetric with equal
/// diagonals by exchangeability.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PairCovariance {
    pub sigma_u: [[f64; 2]; 2],
    pub sigma_z: [[f64; 2]; 2],
    pub sigma_q: [[f64; 2]; 2],
    pub m1: f64,
    pub m2: f64,
}

impl PairCovariance {
    pub fn sigma_u_det(&self) -> f64 {
        self.sigma_u[0][0] * self.sigma_u[1][1] - self.sigma_u[0][1] * self.sigma_u[1][0]
    }
}

/// Log-scale C_N plus the overlap factors G(r), F(r) of the pair density.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IntegrandFactors {
    /// ln C_N (C_N overflows f64 near N ~ 150).
    pub log_c_n: f64,
    pub g_of_r: f64,
    pub f_of_r: f64,
}

fn check_overlap(r: f64) -> Result<()> {
    if !(-1.0 < r && r < 1.0) {
        return Err(Error::domain(format!("overlap r must lie in (-1,1), got {r}")));
    }
    Ok(())
}

/// The coefficient family a_i(r), b_i(r).
pub fn coefficients(params: ModelParams, r: f64) -> Result<CoefficientSet> {
    check_overlap(r)?;
    let p = params.p_f64();
    let pi = params.p() as i32;
    let r2 = 1.0 - r * r;
    let s = ipow(r, pi) - (p - 1.0) * ipow(r, pi - 2) * r2;
    let a1 = 1.0 / (p * (1.0 - ipow(r, 2 * pi - 2)));
    let a2 = 1.0 / (p * (1.0 - s * s));
    let a3 = -ipow(r, pi - 1) / (p * (1.0 - ipow(r, 2 * pi - 2)));
    let a4 = -s / (p * (1.0 - s * s));
    let b1 = -p + a2 * p.powi(3) * ipow(r, 2 * pi - 2) * r2;
    let b2 = -p * ipow(r, pi) - a4 * p.powi(3) * ipow(r, 2 * pi - 2) * r2;
    let poly = -(p - 2.0) + p * r * r;
    let b3 = a2 * p * p * (p - 1.0) * ipow(r, 2 * pi - 4) * r2 * poly;
    let b4 = p * (p - 1.0) * ipow(r, pi - 2) * r2 - a4 * p * p * (p - 1.0) * ipow(r, 2 * pi - 4) * r2 * poly;
    Ok(CoefficientSet {
        a1,
        a2,
        a3,
        a4,
        b1,
        b2,
        b3,
        b4,
    })
}

/// Assembles Sigma_U, Sigma_Z, Sigma_Q and the corner shifts m_i at
/// (r, u1, u2). The u arguments are the conditioned field values in the
/// same units as the indicator window (sqrt(N)-scaled energies).
pub fn pair_covariance(params: ModelParams, r: f64, u1: f64, u2: f64) -> Result<PairCovariance> {
    let c = coefficients(params, r)?;
    let p = params.p_f64();
    let pi = params.p() as i32;
    let r2 = 1.0 - r * r;

    let su = [[-c.b1 / p, -c.b2 / p], [-c.b2 / p, -c.b1 / p]];
    let det = su[0][0] * su[1][1] - su[0][1] * su[1][0];
    if det <= 0.0 {
        return Err(Error::numerical(format!(
            "Sigma_U(r={r}) not positive definite (det = {det})"
        )));
    }
    // Closed-form inverse of the 2x2 exchangeable matrix.
    let inv = [[su[1][1] / det, -su[0][1] / det], [-su[0][1] / det, su[0][0] / det]];
    let quad = |x: [f64; 2], y: [f64; 2]| {
        x[0] * (inv[0][0] * y[0] + inv[0][1] * y[1]) + x[1] * (inv[1][0] * y[0] + inv[1][1] * y[1])
    };

    let sz11 = p * (p - 1.0) - c.a1 * p * p * (p - 1.0) * (p - 1.0) * ipow(r, 2 * pi - 4) * r2;
    let sz12 = term(p * (p - 1.0) * (p - 1.0), r, pi - 1)
        - term(p * (p - 1.0) * (p - 2.0), r, pi - 3)
        + c.a3 * p * p * (p - 1.0) * (p - 1.0) * ipow(r, 2 * pi - 4) * r2;

    let v34 = [c.b3, c.b4];
    let zrow = term(p * (p - 1.0), r, pi - 3) * (p * r * r - (p - 2.0));
    let sq11 = 2.0 * p * (p - 1.0) - c.a2 * r2 * zrow * zrow - quad(v34, v34);
    let va = [c.b1 + c.b3, c.b2 + c.b4];
    let vb = [c.b2 + c.b4, c.b1 + c.b3];
    let sq12 = term(p.powi(4), r, pi)
        - term(2.0 * p * (p - 1.0) * (p * p - 2.0 * p + 2.0), r, pi - 2)
        + term(p * (p - 1.0) * (p - 2.0) * (p - 3.0), r, pi - 4)
        + c.a4 * p * p * term(1.0, r, 2 * pi - 6) * r2 * (p * p * r * r - (p - 1.0) * (p - 2.0)).powi(2)
        - quad(va, vb);

    let m1 = quad(v34, [u1, u2]);
    let m2 = quad(v34, [u2, u1]);

    Ok(PairCovariance {
        sigma_u: su,
        sigma_z: [[sz11, sz12], [sz12, sz11]],
        sigma_q: [[sq11, sq12], [sq12, sq11]],
        m1,
        m2,
    })
}

/// ln of the surface area of the unit sphere S^{n-1} in R^n.
pub fn log_omega_n(n: usize) -> f64 {
    let nf = n as f64;
    std::f64::consts::LN_2 + 0.5 * nf * std::f64::consts::PI.ln() - ln_gamma(0.5 * nf)
}

/// C_N (log scale) and the overlap factors G(r), F(r) of the pair density.
pub fn integrand_factors(params: ModelParams, r: f64) -> Result<IntegrandFactors> {
    check_overlap(r)?;
    let p = params.p_f64();
    let pi = params.p() as i32;
    let n = params.n_f64();
    let log_c_n = log_omega_n(params.n())
        + log_omega_n(params.n() - 1)
        + (n - 1.0) * ((n - 1.0) * (p - 1.0) / (2.0 * std::f64::consts::PI)).ln();
    let r2p2 = ipow(r, 2 * pi - 2);
    let g = ((1.0 - r * r) / (1.0 - r2p2)).sqrt();
    let s = p * ipow(r, pi) - (p - 1.0) * ipow(r, pi - 2);
    let f = g.powi(-3) * (1.0 - r2p2).powf(-0.5) * (1.0 - s * s).powf(-0.5);
    Ok(IntegrandFactors {
        log_c_n,
        g_of_r: g,
        f_of_r: f,
    })
}

/// Centered bivariate Gaussian density with covariance Sigma_U(r) at (u1, u2).
pub fn density_phi_sigma_u(params: ModelParams, r: f64, u1: f64, u2: f64) -> Result<f64> {
    let pc = pair_covariance(params, r, 0.0, 0.0)?;
    let det = pc.sigma_u_det();
    let s11 = pc.sigma_u[0][0];
    let s12 = pc.sigma_u[0][1];
    // Quadratic form u^T Sigma^{-1} u for the exchangeable 2x2 matrix.
    let q = (s11 * (u1 * u1 + u2 * u2) - 2.0 * s12 * u1 * u2) / det;
    Ok((2.0 * std::f64::consts::PI * det.sqrt()).recip() * (-0.5 * q).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::sigma_u_eigenvalues;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn params(p: u32, n: usize) -> ModelParams {
        ModelParams::new(p, n).unwrap()
    }

    #[test]
    fn coefficients_at_zero_overlap() {
        for p in [3u32, 4, 5, 32] {
            let c = coefficients(params(p, 8), 0.0).unwrap();
            let pf = f64::from(p);
            assert_abs_diff_eq!(c.a1, 1.0 / pf, epsilon = 1e-14);
            assert_abs_diff_eq!(c.a2, 1.0 / pf, epsilon = 1e-14);
            assert_abs_diff_eq!(c.a3, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(c.a4, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(c.b1, -pf, epsilon = 1e-14);
            assert_abs_diff_eq!(c.b2, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(c.b3, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(c.b4, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn coefficients_parity_in_r() {
        // a1, a2 are even; the sign flips of the rest follow the parity of
        // each defining r-power.
        for p in [3u32, 4, 5, 32] {
            for r in [0.1, 0.35, 0.77] {
                let cp = coefficients(params(p, 8), r).unwrap();
                let cm = coefficients(params(p, 8), -r).unwrap();
                assert_abs_diff_eq!(cp.a1, cm.a1, epsilon = 1e-13);
                assert_abs_diff_eq!(cp.a2, cm.a2, epsilon = 1e-13);
                let sgn = |k: i32| if k % 2 == 0 { 1.0 } else { -1.0 };
                let pi = p as i32;
                assert_abs_diff_eq!(cp.a3, sgn(pi - 1) * cm.a3, epsilon = 1e-13);
                assert_abs_diff_eq!(cp.a4, sgn(pi) * cm.a4, epsilon = 1e-13);
                assert_abs_diff_eq!(cp.b1, cm.b1, epsilon = 1e-12);
                assert_abs_diff_eq!(cp.b2, sgn(pi) * cm.b2, epsilon = 1e-12);
                // b3 is even: every r-power in its definition has even exponent.
                assert_abs_diff_eq!(cp.b3, cm.b3, epsilon = 1e-12);
                assert_abs_diff_eq!(cp.b4, sgn(pi) * cm.b4, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn pair_covariance_reference_points() {
        for p in [3u32, 4, 5, 32] {
            let pc = pair_covariance(params(p, 8), 0.0, 0.0, 0.0).unwrap();
            assert_abs_diff_eq!(pc.sigma_u[0][0], 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(pc.sigma_u[0][1], 0.0, epsilon = 1e-14);
        }
        let pc3 = pair_covariance(params(3, 8), 0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(pc3.sigma_z[0][0], 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc3.sigma_z[0][1], -6.0, epsilon = 1e-12);

        let pc5 = pair_covariance(params(5, 8), 0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(pc5.sigma_z[0][0], 20.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc5.sigma_z[0][1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc5.sigma_q[0][0], 40.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc5.sigma_q[0][1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pc5.m1, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pc5.m2, 0.0, epsilon = 1e-14);

        // At p = 4 the corner entries stay correlated at r = 0.
        let pc4 = pair_covariance(params(4, 8), 0.0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(pc4.sigma_q[0][1], 24.0, epsilon = 1e-12);
    }

    #[test]
    fn sigma_u_eigen_matches_closed_form() {
        for p in [3u32, 5, 32] {
            for r in [-0.8, -0.3, 0.05, 0.6, 0.95] {
                let pc = pair_covariance(params(p, 8), r, 0.0, 0.0).unwrap();
                let (lp, lm) = sigma_u_eigenvalues(p, r);
                assert_abs_diff_eq!(pc.sigma_u[0][0] + pc.sigma_u[0][1], lp, epsilon = 1e-12);
                assert_abs_diff_eq!(pc.sigma_u[0][0] - pc.sigma_u[0][1], lm, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn m_swap_and_zero_properties() {
        for p in [3u32, 5, 32] {
            for r in [-0.7, 0.2, 0.55] {
                let a = pair_covariance(params(p, 8), r, 0.8, -1.3).unwrap();
                let b = pair_covariance(params(p, 8), r, -1.3, 0.8).unwrap();
                assert_eq!(a.m1, b.m2);
                assert_eq!(a.m2, b.m1);
                let z = pair_covariance(params(p, 8), r, 0.0, 0.0).unwrap();
                assert_eq!(z.m1, 0.0);
                assert_eq!(z.m2, 0.0);
            }
        }
    }

    #[test]
    fn integrand_factor_values() {
        let f0 = integrand_factors(params(5, 8), 0.0).unwrap();
        assert_abs_diff_eq!(f0.g_of_r, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f0.f_of_r, 1.0, epsilon = 1e-14);

        let f = integrand_factors(params(3, 8), 0.5).unwrap();
        assert_abs_diff_eq!(f.g_of_r, 0.8f64.sqrt(), epsilon = 1e-12);

        // omega_2 = 2 pi, omega_3 = 4 pi.
        assert_abs_diff_eq!(
            log_omega_n(2).exp(),
            2.0 * std::f64::consts::PI,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            log_omega_n(3).exp(),
            4.0 * std::f64::consts::PI,
            epsilon = 1e-10
        );
    }

    #[test]
    fn g_and_f_even_small_r_expansion() {
        let pars = params(3, 8);
        for r in [0.1, 0.4, 0.85] {
            let a = integrand_factors(pars, r).unwrap();
            let b = integrand_factors(pars, -r).unwrap();
            assert_abs_diff_eq!(a.g_of_r, b.g_of_r, epsilon = 1e-13);
            assert_abs_diff_eq!(a.f_of_r, b.f_of_r, epsilon = 1e-13);
            assert!(a.g_of_r > 0.0 && a.g_of_r < 1.0);
        }
        // log G(r) = -r^2/2 + O(r^4): Richardson on (log G)/r^2 as r -> 0.
        let ratio = |r: f64| integrand_factors(pars, r).unwrap().g_of_r.ln() / (r * r);
        let r1 = ratio(1e-2);
        let r2 = ratio(5e-3);
        let extrap = (4.0 * r2 - r1) / 3.0;
        assert_abs_diff_eq!(extrap, -0.5, epsilon = 1e-6);
    }

    #[test]
    fn density_values() {
        let pars = params(5, 8);
        let inv2pi = 1.0 / (2.0 * std::f64::consts::PI);
        assert_abs_diff_eq!(
            density_phi_sigma_u(pars, 0.0, 0.0, 0.0).unwrap(),
            inv2pi,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            density_phi_sigma_u(pars, 0.0, 1.0, -1.0).unwrap(),
            inv2pi * (-1.0f64).exp(),
            epsilon = 1e-14
        );
        // Independent generic bivariate-normal evaluation at p=3, r=0.3.
        let pc = pair_covariance(params(3, 8), 0.3, 0.0, 0.0).unwrap();
        let (s11, s12) = (pc.sigma_u[0][0], pc.sigma_u[0][1]);
        let det = s11 * s11 - s12 * s12;
        let (u1, u2) = (-1.0, -1.0);
        let q = (s11 * u1 * u1 - 2.0 * s12 * u1 * u2 + s11 * u2 * u2) / det;
        let generic = (2.0 * std::f64::consts::PI).recip() * det.powf(-0.5) * (-0.5 * q).exp();
        assert_abs_diff_eq!(
            density_phi_sigma_u(params(3, 8), 0.3, -1.0, -1.0).unwrap(),
            generic,
            epsilon = 1e-14
        );
    }

    #[test]
    fn domain_errors() {
        assert!(coefficients(params(3, 8), 1.0).is_err());
        assert!(pair_covariance(params(3, 8), -1.0, 0.0, 0.0).is_err());
        assert!(integrand_factors(params(3, 8), 1.5).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_equal_diagonals_and_psd(p in 3u32..33, r in -0.95f64..0.95) {
            let pc = pair_covariance(params(p, 8), r, 0.0, 0.0).unwrap();
            for m in [pc.sigma_u, pc.sigma_z, pc.sigma_q] {
                prop_assert_eq!(m[0][1], m[1][0]);
                prop_assert_eq!(m[0][0], m[1][1]);
            }
            // PSD for exchangeable 2x2: diag >= |offdiag| (tiny fp slack).
            prop_assert!(pc.sigma_u[0][0] > pc.sigma_u[0][1].abs());
            prop_assert!(pc.sigma_z[0][0] >= pc.sigma_z[0][1].abs() - 1e-9);
            prop_assert!(pc.sigma_q[0][0] >= pc.sigma_q[0][1].abs() - 1e-9);
        }
    }
}
