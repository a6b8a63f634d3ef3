//! Random-matrix machinery: GOE sampling under the two normalizations in
//! play, determinant absolute-moment estimators with exact small-n oracles,
//! the conditional Hessian-pair sampler with its A/B decomposition, the
//! pair-to-product determinant ratio, the eigenvalue overcrowding estimate,
//! and the rank-d determinant perturbation inequality.

mod bounds;
mod dets;
mod goe;
mod pair;

pub use bounds::{det_perturbation_bound, overcrowding_probability, OvercrowdReport, PerturbationCheck};
pub use dets::{expected_abs_det_small_n, mc_abs_det_moment, mean_density_estimate};
pub use goe::{sample_goe, sample_goe_with, GoeMatrix, GoeNormalization};
pub use pair::{b_matrix_norm_stats, delta_n_estimate, sample_hessian_pair, BNormStats, HessianPair};
