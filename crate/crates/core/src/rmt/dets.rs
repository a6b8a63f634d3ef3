use super::goe::{sample_symmetric, GoeNormalization};
use crate::error::{Error, Result};
use crate::linalg::{log_abs_det, sym_eigenvalues};
use crate::mc::{parallel_log_mean, parallel_mean, LogMeanAcc, MeanAcc, MomentEstimate};
use nalgebra::DMatrix;
use statrs::function::erf::erf;

/// Exact E|det(G_n - xI)| for n in {1, 2}: the n = 1 case is a folded-normal
/// mean; n = 2 reduces to a Gaussian-times-exponential integral with a
/// closed form after writing det = (u - x)^2 - (w^2 + c^2).
pub fn expected_abs_det_small_n(n: usize, x: f64, normalization: GoeNormalization) -> Result<f64> {
    let v = normalization.offdiag_variance(n);
    match n {
        1 => {
            let sigma = (2.0 * v).sqrt();
            Ok(folded_normal_mean(x, sigma))
        }
        2 => {
            // u = (g11+g22)/2 ~ N(0, v); w = (g11-g22)/2, c = g12 iid N(0, v),
            // so w^2 + c^2 ~ Exp(mean 2v) and E|t - s| = t - m + 2m e^{-t/m}.
            let m = 2.0 * v;
            Ok(x * x - v + 2.0 * std::f64::consts::SQRT_2 * v * (-x * x / (4.0 * v)).exp())
                .map(|val| {
                    debug_assert!(m > 0.0);
                    val
                })
        }
        _ => Err(Error::domain(format!(
            "expected_abs_det_small_n supports n in {{1, 2}}, got {n}"
        ))),
    }
}

/// Mean of |Y| for Y ~ N(mu, sigma^2).
pub fn folded_normal_mean(mu: f64, sigma: f64) -> f64 {
    let a = mu.abs();
    sigma * (2.0 / std::f64::consts::PI).sqrt() * (-a * a / (2.0 * sigma * sigma)).exp()
        + a * erf(a / (sigma * std::f64::consts::SQRT_2))
}

/// Monte Carlo estimate of E|det(G_n - xI)|^k, accumulated as k log|det|
/// through an LU factorization so large-n moments cannot overflow.
pub fn mc_abs_det_moment(
    n: usize,
    x: f64,
    k: u32,
    n_samples: u64,
    seed: u64,
    normalization: GoeNormalization,
) -> MomentEstimate {
    assert!(k >= 1 && n_samples >= 2);
    let v = normalization.offdiag_variance(n);
    let acc = parallel_log_mean(seed, 0, n_samples, |rng, take| {
        let mut acc = LogMeanAcc::new();
        for _ in 0..take {
            let mut m = sample_symmetric(n, v, rng);
            for i in 0..n {
                m[(i, i)] -= x;
            }
            acc.push_log(f64::from(k) * log_abs_det(&m));
        }
        acc
    });
    acc.estimate(seed)
}

/// Histogram estimate of the expected density of states at `x` for the
/// sqrt2-support GOE of dimension n.
pub fn mean_density_estimate(
    n: usize,
    x: f64,
    n_samples: u64,
    seed: u64,
    bin_width: f64,
) -> MomentEstimate {
    let v = GoeNormalization::Sqrt2Support.offdiag_variance(n);
    let lo = x - 0.5 * bin_width;
    let hi = x + 0.5 * bin_width;
    let acc = parallel_mean(seed, 0, n_samples, |rng, take| {
        let mut acc = MeanAcc::default();
        for _ in 0..take {
            let m = sample_symmetric(n, v, rng);
            let count = sym_eigenvalues(&m)
                .iter()
                .filter(|&&l| l >= lo && l < hi)
                .count();
            acc.push(count as f64 / (n as f64 * bin_width));
        }
        acc
    });
    acc.estimate(seed)
}
