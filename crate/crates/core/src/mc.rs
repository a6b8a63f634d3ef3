//! Monte Carlo plumbing: seed-derived substreams, log-scale mean accumulation,
//! and a chunked parallel driver whose results do not depend on thread count.
//!
//! Substream scheme: chunk `c` of an estimator draws from a ChaCha8 stream
//! obtained by seeding the cipher with the master seed and setting the
//! 64-bit stream counter to `c`. Chunk partials are merged in chunk order,
//! so the final estimate is a pure function of (parameters, seed).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A Monte Carlo estimate with provenance.
///
/// When `log_scale` is set, `value` is ln of the estimated mean and `stderr`
/// is the standard error of the mean relative to the mean (so the linear-scale
/// standard error is `exp(value) * stderr` to first order).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub value: f64,
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub log_scale: bool,
}

impl MomentEstimate {
    pub fn linear_value(&self) -> f64 {
        if self.log_scale {
            self.value.exp()
        } else {
            self.value
        }
    }

    pub fn linear_stderr(&self) -> f64 {
        if self.log_scale {
            self.value.exp() * self.stderr
        } else {
            self.stderr
        }
    }

    /// Relative standard error (stderr / mean) in linear scale.
    pub fn rel_stderr(&self) -> f64 {
        if self.log_scale {
            self.stderr
        } else if self.value != 0.0 {
            (self.stderr / self.value).abs()
        } else {
            f64::INFINITY
        }
    }

    /// |self - other| measured in combined standard errors (linear scale).
    pub fn sigmas_from(&self, other: f64, other_stderr: f64) -> f64 {
        let se = (self.linear_stderr().powi(2) + other_stderr.powi(2)).sqrt();
        (self.linear_value() - other).abs() / se
    }
}

/// RNG for substream `stream` of master seed `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Accumulates a mean of nonnegative weights supplied as log-values,
/// in a max-shifted form that never overflows.
#[derive(Debug, Clone, Copy)]
pub struct LogMeanAcc {
    max_log: f64,
    sum: f64,    // sum of exp(l - max_log)
    sum_sq: f64, // sum of exp(2(l - max_log))
    n: u64,      // total observations, including exact zeros
}

impl Default for LogMeanAcc {
    fn default() -> Self {
        LogMeanAcc {
            max_log: f64::NEG_INFINITY,
            sum: 0.0,
            sum_sq: 0.0,
            n: 0,
        }
    }
}

impl LogMeanAcc {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record one observation with weight exp(log_w).
    pub fn push_log(&mut self, log_w: f64) {
        self.n += 1;
        if log_w == f64::NEG_INFINITY {
            return;
        }
        if log_w > self.max_log {
            let shift = if self.max_log.is_finite() {
                (self.max_log - log_w).exp()
            } else {
                0.0
            };
            self.sum *= shift;
            self.sum_sq *= shift * shift;
            self.max_log = log_w;
        }
        let e = (log_w - self.max_log).exp();
        self.sum += e;
        self.sum_sq += e * e;
    }

    /// Record an observation with weight exactly zero.
    pub fn push_zero(&mut self) {
        self.n += 1;
    }

    pub fn merge(&mut self, other: &LogMeanAcc) {
        self.n += other.n;
        if other.max_log == f64::NEG_INFINITY {
            return;
        }
        if other.max_log > self.max_log {
            let shift = if self.max_log.is_finite() {
                (self.max_log - other.max_log).exp()
            } else {
                0.0
            };
            self.sum = self.sum * shift + other.sum;
            self.sum_sq = self.sum_sq * shift * shift + other.sum_sq;
            self.max_log = other.max_log;
        } else {
            let shift = (other.max_log - self.max_log).exp();
            self.sum += other.sum * shift;
            self.sum_sq += other.sum_sq * shift * shift;
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// ln of the sample mean; -inf when every weight was zero.
    pub fn log_mean(&self) -> f64 {
        if self.n == 0 || self.sum == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.max_log + (self.sum / self.n as f64).ln()
    }

    /// Standard error of the mean divided by the mean.
    pub fn rel_stderr(&self) -> f64 {
        if self.n < 2 || self.sum == 0.0 {
            return f64::INFINITY;
        }
        let n = self.n as f64;
        // Var(w)/mean(w)^2 = n * sum_sq / sum^2 - 1, with the n/(n-1) correction.
        let ratio = (n * self.sum_sq / (self.sum * self.sum) - 1.0).max(0.0);
        (ratio * n / (n - 1.0)).sqrt() / n.sqrt()
    }

    pub fn estimate(&self, seed: u64) -> MomentEstimate {
        MomentEstimate {
            value: self.log_mean(),
            stderr: self.rel_stderr(),
            n_samples: self.n,
            seed,
            log_scale: true,
        }
    }
}

/// Default number of observations handed to one substream chunk.
pub const CHUNK: u64 = 8192;

/// Runs `n_samples` observations split into fixed-size chunks, each chunk on
/// its own substream, reduced in chunk order. `body` receives the chunk RNG
/// and the number of observations it must produce, and returns a partial
/// accumulator.
pub fn parallel_log_mean<F>(seed: u64, stream_base: u64, n_samples: u64, body: F) -> LogMeanAcc
where
    F: Fn(&mut ChaCha8Rng, u64) -> LogMeanAcc + Sync,
{
    let n_chunks = n_samples.div_ceil(CHUNK);
    let partials: Vec<LogMeanAcc> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, stream_base + c);
            let take = CHUNK.min(n_samples - c * CHUNK);
            body(&mut rng, take)
        })
        .collect();
    let mut total = LogMeanAcc::new();
    for p in &partials {
        total.merge(p);
    }
    total
}

/// Plain scalar mean/stderr accumulator for linear-scale statistics.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanAcc {
    sum: f64,
    sum_sq: f64,
    n: u64,
}

impl MeanAcc {
    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.n += 1;
    }

    pub fn merge(&mut self, other: &MeanAcc) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.n += other.n;
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.n as f64
    }

    pub fn variance(&self) -> f64 {
        let n = self.n as f64;
        ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0)
    }

    pub fn stderr(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }

    pub fn estimate(&self, seed: u64) -> MomentEstimate {
        MomentEstimate {
            value: self.mean(),
            stderr: self.stderr(),
            n_samples: self.n,
            seed,
            log_scale: false,
        }
    }
}

/// Chunked parallel driver for linear-scale accumulators; same determinism
/// contract as [`parallel_log_mean`].
pub fn parallel_mean<F>(seed: u64, stream_base: u64, n_samples: u64, body: F) -> MeanAcc
where
    F: Fn(&mut ChaCha8Rng, u64) -> MeanAcc + Sync,
{
    let n_chunks = n_samples.div_ceil(CHUNK);
    let partials: Vec<MeanAcc> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, stream_base + c);
            let take = CHUNK.min(n_samples - c * CHUNK);
            body(&mut rng, take)
        })
        .collect();
    let mut total = MeanAcc::default();
    for p in &partials {
        total.merge(p);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn log_mean_matches_direct() {
        let vals: [f64; 5] = [0.5, 1.5, 2.5, 1e-12, 3.0];
        let mut acc = LogMeanAcc::new();
        for v in vals {
            acc.push_log(v.ln());
        }
        let direct: f64 = vals.iter().sum::<f64>() / vals.len() as f64;
        assert!((acc.log_mean() - direct.ln()).abs() < 1e-12);
    }

    #[test]
    fn merge_is_order_independent_enough() {
        let mut a = LogMeanAcc::new();
        let mut b = LogMeanAcc::new();
        let mut whole = LogMeanAcc::new();
        for i in 0..100 {
            let l = (i as f64 * 0.1).sin() * 30.0;
            if i < 50 {
                a.push_log(l)
            } else {
                b.push_log(l)
            }
            whole.push_log(l);
        }
        let mut m = LogMeanAcc::new();
        m.merge(&a);
        m.merge(&b);
        assert!((m.log_mean() - whole.log_mean()).abs() < 1e-10);
        assert!((m.rel_stderr() - whole.rel_stderr()).abs() < 1e-10);
    }

    #[test]
    fn zeros_count_toward_n() {
        let mut acc = LogMeanAcc::new();
        acc.push_log(0.0); // weight 1
        acc.push_zero();
        assert_eq!(acc.n(), 2);
        assert!((acc.log_mean() - 0.5_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn substreams_are_reproducible_and_distinct() {
        let mut r1 = substream(7, 0);
        let mut r1b = substream(7, 0);
        let mut r2 = substream(7, 1);
        let a: f64 = r1.gen();
        assert_eq!(a, r1b.gen::<f64>());
        assert_ne!(a, r2.gen::<f64>());
    }

    #[test]
    fn parallel_mean_independent_of_threading() {
        // Same seed twice; rayon may schedule differently but chunk order is fixed.
        let run = || {
            parallel_mean(99, 0, 20_000, |rng, take| {
                let mut acc = MeanAcc::default();
                for _ in 0..take {
                    acc.push(rng.gen::<f64>());
                }
                acc
            })
        };
        let a = run();
        let b = run();
        assert_eq!(a.mean().to_bits(), b.mean().to_bits());
        assert!((a.mean() - 0.5).abs() < 0.01);
    }
}
