use crate::mc::substream;
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// The two GOE entry-variance conventions in play. Both appear in the
/// determinant-asymptotics literature and differ by an overall factor
/// sqrt(2); every public operation takes the tag explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GoeNormalization {
    /// Off-diagonal variance 1/n, on-diagonal 2/n; spectrum fills [-2, 2].
    Paper1OverN,
    /// Off-diagonal variance 1/(2n), on-diagonal 1/n; spectrum fills
    /// [-sqrt(2), sqrt(2)].
    Sqrt2Support,
}

impl GoeNormalization {
    pub fn offdiag_variance(&self, n: usize) -> f64 {
        match self {
            GoeNormalization::Paper1OverN => 1.0 / n as f64,
            GoeNormalization::Sqrt2Support => 0.5 / n as f64,
        }
    }
}

/// A symmetric Gaussian matrix sample with its normalization tag.
#[derive(Debug, Clone)]
pub struct GoeMatrix {
    pub n: usize,
    pub entries: DMatrix<f64>,
    pub normalization: GoeNormalization,
}

impl GoeMatrix {
    /// Rescale to the other normalization (factor sqrt(2)).
    pub fn to_normalization(&self, tag: GoeNormalization) -> GoeMatrix {
        let scale = match (self.normalization, tag) {
            (a, b) if a == b => 1.0,
            (GoeNormalization::Paper1OverN, GoeNormalization::Sqrt2Support) => {
                std::f64::consts::FRAC_1_SQRT_2
            }
            _ => std::f64::consts::SQRT_2,
        };
        GoeMatrix {
            n: self.n,
            entries: &self.entries * scale,
            normalization: tag,
        }
    }
}

/// Symmetric matrix with independent N(0, v) entries above the diagonal and
/// N(0, 2v) on it, filled in fixed row-major upper-triangular order.
pub(crate) fn sample_symmetric(n: usize, v: f64, rng: &mut impl Rng) -> DMatrix<f64> {
    let sd = v.sqrt();
    let sd_diag = (2.0 * v).sqrt();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let g: f64 = rng.sample(StandardNormal);
            if i == j {
                m[(i, i)] = sd_diag * g;
            } else {
                m[(i, j)] = sd * g;
                m[(j, i)] = sd * g;
            }
        }
    }
    m
}

/// One GOE sample from substream 0 of `seed`.
pub fn sample_goe(n: usize, normalization: GoeNormalization, seed: u64) -> GoeMatrix {
    let mut rng = substream(seed, 0);
    sample_goe_with(n, normalization, &mut rng)
}

/// One GOE sample from a caller-managed RNG.
pub fn sample_goe_with(n: usize, normalization: GoeNormalization, rng: &mut impl Rng) -> GoeMatrix {
    GoeMatrix {
        n,
        entries: sample_symmetric(n, normalization.offdiag_variance(n), rng),
        normalization,
    }
}
