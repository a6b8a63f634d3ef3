use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The pair (p, N) fixing the pure p-spin model and the ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParams {
    p: u32,
    n: usize,
}

impl ModelParams {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::domain(format!("p must be >= 3, got {p}")));
        }
        if n < 2 {
            return Err(Error::domain(format!("N must be >= 2, got {n}")));
        }
        Ok(ModelParams { p, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Ambient dimension N (configurations live on the radius-sqrt(N) sphere in R^N).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p_f64(&self) -> f64 {
        f64::from(self.p)
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(2, 5).is_err());
        assert!(ModelParams::new(3, 1).is_err());
        assert!(ModelParams::new(3, 2).is_ok());
    }
}
