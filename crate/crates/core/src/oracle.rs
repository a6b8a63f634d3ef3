//! Brute-force validator of the conditional Hessian law: builds the joint
//! Gaussian distribution of (field, gradient, Hessian) at two points of
//! prescribed overlap directly from the sphere kernel k(x, y) = (x.y)^p,
//! conditions by Schur complement, and compares entrywise with the closed
//! forms in [`crate::covariance`].
//!
//! Frames are geodesic-adapted: the two points sit in the plane of the last
//! two coordinate axes, the first n-2 frame vectors are the shared standard
//! basis of the orthogonal complement, and the last frame vector at each
//! point is the unit tangent of the connecting great circle, oriented
//! forward (from point 1 toward point 2) at both points. The forward-forward
//! orientation is the one that reproduces the sign of the closed-form
//! cross-covariances; tests pin this down rather than assuming it.
//!
//! Derivatives of the kernel are exact: frame derivatives through the
//! exponential map reduce to polynomial expressions in the pairwise dot
//! products of points and frame vectors (a finite-difference fallback
//! cross-checks them at coarse tolerance).

use crate::covariance::{pair_covariance, PairCovariance};
use crate::error::{Error, Result};
use crate::linalg::sym_eigenvalues;
use crate::params::ModelParams;
use nalgebra::{DMatrix, DVector};

/// Two points of overlap r on the unit sphere with geodesic-adapted frames.
#[derive(Debug, Clone)]
pub struct FrameConfig {
    pub n: usize,
    pub r: f64,
    pub point1: DVector<f64>,
    pub point2: DVector<f64>,
    /// n-1 orthonormal tangent vectors at each point (rows).
    pub frame1: Vec<DVector<f64>>,
    pub frame2: Vec<DVector<f64>>,
}

/// Joint law of the stacked vector
/// (f(s1), f(s2), grad f(s1), grad f(s2), vech H(s1), vech H(s2)).
#[derive(Debug, Clone)]
pub struct JointGaussian {
    pub cov: DMatrix<f64>,
    /// (i, j) index pairs of the Hessian vech blocks, i <= j, row-major.
    pub vech: Vec<(usize, usize)>,
}

/// Conditional law of the two rescaled Hessians given field values (u1, u2)
/// and vanishing gradients at both points.
#[derive(Debug, Clone)]
pub struct ConditionalHessians {
    /// Stacked conditional mean (2m entries, point 1 block first).
    pub mean: DVector<f64>,
    /// Stacked conditional covariance (2m x 2m).
    pub cov: DMatrix<f64>,
    pub vech: Vec<(usize, usize)>,
}

/// One compared entry of the oracle-vs-engine report.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub label: String,
    pub oracle: f64,
    pub engine: f64,
}

impl ComparisonRow {
    pub fn abs_diff(&self) -> f64 {
        (self.oracle - self.engine).abs()
    }
}

/// Full comparison report for one (p, n, r, u1, u2) case.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub max_abs_diff: f64,
}

/// Places the two points and their frames for dimension n and overlap r.
pub fn build_frames(n: usize, r: f64) -> Result<FrameConfig> {
    if n < 3 {
        return Err(Error::domain("frames need ambient dimension n >= 3"));
    }
    if !(-1.0 < r && r < 1.0) {
        return Err(Error::domain(format!("overlap must lie in (-1,1), got {r}")));
    }
    let theta = r.acos();
    let point = |psi: f64| {
        let mut v = DVector::zeros(n);
        v[n - 2] = psi.sin();
        v[n - 1] = psi.cos();
        v
    };
    let tangent = |psi: f64| {
        let mut v = DVector::zeros(n);
        v[n - 2] = psi.cos();
        v[n - 1] = -psi.sin();
        v
    };
    let (psi1, psi2) = (-theta / 2.0, theta / 2.0);
    let shared: Vec<DVector<f64>> = (0..n - 2)
        .map(|i| {
            let mut v = DVector::zeros(n);
            v[i] = 1.0;
            v
        })
        .collect();
    let mut frame1 = shared.clone();
    frame1.push(tangent(psi1));
    let mut frame2 = shared;
    frame2.push(tangent(psi2));
    Ok(FrameConfig {
        n,
        r,
        point1: point(psi1),
        point2: point(psi2),
        frame1,
        frame2,
    })
}

/// Dot-product table between chart a and chart b; everything the kernel
/// derivatives depend on.
struct GTable {
    g0: f64,
    a: Vec<f64>,        // F_i^a . point_b
    b: Vec<f64>,        // point_a . F_k^b
    g: DMatrix<f64>,    // F_i^a . F_k^b
}

fn gtable(pa: &DVector<f64>, fa: &[DVector<f64>], pb: &DVector<f64>, fb: &[DVector<f64>]) -> GTable {
    let d = fa.len();
    let mut g = DMatrix::zeros(d, d);
    for (i, fi) in fa.iter().enumerate() {
        for (k, fk) in fb.iter().enumerate() {
            g[(i, k)] = fi.dot(fk);
        }
    }
    GTable {
        g0: pa.dot(pb),
        a: fa.iter().map(|f| f.dot(pb)).collect(),
        b: fb.iter().map(|f| pa.dot(f)).collect(),
        g,
    }
}

fn falling(p: u32, k: u32) -> f64 {
    (0..k).map(|i| f64::from(p) - i as f64).product()
}

/// Mixed frame derivative of (x.y)^p at the chart centers: `da` and `db` are
/// the derivative multi-indices (0 to 2 directions each) at points a and b.
fn cov_entry(p: u32, t: &GTable, da: &[usize], db: &[usize]) -> f64 {
    let g0 = t.g0;
    // fac * g0^(p-k), with the whole term dropped when the falling factorial
    // vanishes (k > p would otherwise hit negative powers at g0 = 0).
    let gp = |k: u32| -> f64 {
        let fac = falling(p, k);
        if fac == 0.0 {
            0.0
        } else {
            fac * g0.powi(p as i32 - k as i32)
        }
    };
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    match (da.len(), db.len()) {
        (0, 0) => g0.powi(p as i32),
        (1, 0) => gp(1) * t.a[da[0]],
        (0, 1) => gp(1) * t.b[db[0]],
        (1, 1) => {
            let (i, k) = (da[0], db[0]);
            gp(2) * t.a[i] * t.b[k] + gp(1) * t.g[(i, k)]
        }
        (2, 0) => {
            let (i, j) = (da[0], da[1]);
            gp(2) * t.a[i] * t.a[j] + gp(1) * (-delta(i, j) * g0)
        }
        (0, 2) => {
            let (k, l) = (db[0], db[1]);
            gp(2) * t.b[k] * t.b[l] + gp(1) * (-delta(k, l) * g0)
        }
        (2, 1) => {
            let (i, j, k) = (da[0], da[1], db[0]);
            let gij = -delta(i, j) * g0;
            let gijk = -delta(i, j) * t.b[k];
            gp(3) * t.a[i] * t.a[j] * t.b[k]
                + gp(2) * (gij * t.b[k] + t.g[(i, k)] * t.a[j] + t.g[(j, k)] * t.a[i])
                + gp(1) * gijk
        }
        (1, 2) => {
            let (i, k, l) = (da[0], db[0], db[1]);
            let gkl = -delta(k, l) * g0;
            let gikl = -delta(k, l) * t.a[i];
            gp(3) * t.a[i] * t.b[k] * t.b[l]
                + gp(2) * (gkl * t.a[i] + t.g[(i, k)] * t.b[l] + t.g[(i, l)] * t.b[k])
                + gp(1) * gikl
        }
        (2, 2) => {
            let (i, j, k, l) = (da[0], da[1], db[0], db[1]);
            let gij = -delta(i, j) * g0;
            let gkl = -delta(k, l) * g0;
            let gijk = -delta(i, j) * t.b[k];
            let gijl = -delta(i, j) * t.b[l];
            let gikl = -delta(k, l) * t.a[i];
            let gjkl = -delta(k, l) * t.a[j];
            let gijkl = delta(i, j) * delta(k, l) * g0;
            gp(4) * t.a[i] * t.a[j] * t.b[k] * t.b[l]
                + gp(3)
                    * (gij * t.b[k] * t.b[l]
                        + gkl * t.a[i] * t.a[j]
                        + t.g[(i, k)] * t.a[j] * t.b[l]
                        + t.g[(i, l)] * t.a[j] * t.b[k]
                        + t.g[(j, k)] * t.a[i] * t.b[l]
                        + t.g[(j, l)] * t.a[i] * t.b[k])
                + gp(2)
                    * (gij * gkl
                        + t.g[(i, k)] * t.g[(j, l)]
                        + t.g[(i, l)] * t.g[(j, k)]
                        + gijk * t.b[l]
                        + gijl * t.b[k]
                        + gikl * t.a[j]
                        + gjkl * t.a[i])
                + gp(1) * gijkl
        }
        _ => unreachable!("derivative orders are at most 2 per point"),
    }
}

fn stack_items(n: usize) -> (Vec<(usize, Vec<usize>)>, Vec<(usize, usize)>) {
    let d = n - 1;
    let vech: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .collect();
    let mut items: Vec<(usize, Vec<usize>)> = vec![(0, vec![]), (1, vec![])];
    for a in 0..2 {
        for i in 0..d {
            items.push((a, vec![i]));
        }
    }
    for a in 0..2 {
        for &(i, j) in &vech {
            items.push((a, vec![i, j]));
        }
    }
    (items, vech)
}

/// The full joint covariance of values, gradients, and Hessians at the two
/// framed points, from exact kernel derivatives.
pub fn joint_covariance(p: u32, frames: &FrameConfig) -> JointGaussian {
    let (items, vech) = stack_items(frames.n);
    let charts = [
        (&frames.point1, &frames.frame1),
        (&frames.point2, &frames.frame2),
    ];
    let tables: Vec<Vec<GTable>> = (0..2)
        .map(|a| {
            (0..2)
                .map(|b| gtable(charts[a].0, charts[a].1, charts[b].0, charts[b].1))
                .collect()
        })
        .collect();
    let m = items.len();
    let mut cov = DMatrix::zeros(m, m);
    for x in 0..m {
        for y in 0..m {
            let (a, ref da) = items[x];
            let (b, ref db) = items[y];
            cov[(x, y)] = cov_entry(p, &tables[a][b], da, db);
        }
    }
    JointGaussian { cov, vech }
}

/// Same covariance entries via central finite differences of the kernel
/// along the exponential-map charts; coarse cross-validation of the
/// analytic derivatives.
pub fn joint_covariance_fd(p: u32, frames: &FrameConfig, step: f64) -> JointGaussian {
    let (items, vech) = stack_items(frames.n);
    let d = frames.n - 1;
    let charts = [
        (&frames.point1, &frames.frame1),
        (&frames.point2, &frames.frame2),
    ];
    let chart_point = |a: usize, t: &[f64]| -> DVector<f64> {
        let (pt, fr) = charts[a];
        let mut tan = DVector::zeros(frames.n);
        for (i, &ti) in t.iter().enumerate() {
            tan += fr[i].clone() * ti;
        }
        let norm = tan.norm();
        if norm < 1e-300 {
            pt.clone()
        } else {
            pt.clone() * norm.cos() + tan * (norm.sin() / norm)
        }
    };
    // Central-difference stencil for a derivative multi-index of order <= 2.
    let stencil = |dirs: &[usize]| -> Vec<(f64, Vec<f64>)> {
        let h = step;
        let e = |i: usize, s: f64| {
            let mut v = vec![0.0; d];
            v[i] = s;
            v
        };
        match dirs {
            [] => vec![(1.0, vec![0.0; d])],
            [i] => vec![(0.5 / h, e(*i, h)), (-0.5 / h, e(*i, -h))],
            [i, j] if i == j => vec![
                (1.0 / (h * h), e(*i, h)),
                (-2.0 / (h * h), vec![0.0; d]),
                (1.0 / (h * h), e(*i, -h)),
            ],
            [i, j] => {
                let both = |si: f64, sj: f64| {
                    let mut v = vec![0.0; d];
                    v[*i] = si;
                    v[*j] = sj;
                    v
                };
                vec![
                    (0.25 / (h * h), both(h, h)),
                    (-0.25 / (h * h), both(h, -h)),
                    (-0.25 / (h * h), both(-h, h)),
                    (0.25 / (h * h), both(-h, -h)),
                ]
            }
            _ => unreachable!(),
        }
    };
    let m = items.len();
    let mut cov = DMatrix::zeros(m, m);
    for x in 0..m {
        for y in 0..m {
            let (a, ref da) = items[x];
            let (b, ref db) = items[y];
            let mut total = 0.0;
            for (ca, ta) in stencil(da) {
                let pa = chart_point(a, &ta);
                for (cb, tb) in stencil(db) {
                    let pb = chart_point(b, &tb);
                    total += ca * cb * pa.dot(&pb).powi(p as i32);
                }
            }
            cov[(x, y)] = total;
        }
    }
    JointGaussian { cov, vech }
}

/// Schur-complement conditioning of the Hessian pair on
/// (f(s1) = u1, f(s2) = u2, grad f(s1) = grad f(s2) = 0), rescaled by
/// 1/sqrt((n-1) p (p-1)).
pub fn condition_hessians(
    p: u32,
    frames: &FrameConfig,
    u1: f64,
    u2: f64,
) -> Result<ConditionalHessians> {
    let joint = joint_covariance(p, frames);
    let n = frames.n;
    let nc = 2 + 2 * (n - 1);
    let m = joint.vech.len();
    let cc = joint.cov.view((0, 0), (nc, nc)).into_owned();
    let hc = joint.cov.view((nc, 0), (2 * m, nc)).into_owned();
    let hh = joint.cov.view((nc, nc), (2 * m, 2 * m)).into_owned();

    let chol = cc.clone().cholesky().ok_or_else(|| {
        let min_ev = sym_eigenvalues(&cc).first().copied().unwrap_or(f64::NAN);
        Error::numerical(format!(
            "singular conditioning block (smallest eigenvalue {min_ev:.3e})"
        ))
    })?;
    let mut cvals = DVector::zeros(nc);
    cvals[0] = u1;
    cvals[1] = u2;
    let mean_raw = &hc * chol.solve(&cvals);
    let cov_raw = &hh - &hc * chol.solve(&hc.transpose());

    let scale = ((n as f64 - 1.0) * f64::from(p) * (f64::from(p) - 1.0)).sqrt();
    Ok(ConditionalHessians {
        mean: mean_raw / scale,
        cov: cov_raw / (scale * scale),
        vech: joint.vech,
    })
}

/// The covariance-engine prediction of the same conditional law, assembled
/// entrywise from [`PairCovariance`] and the G-block mixture rule.
pub fn engine_prediction(
    params: ModelParams,
    n: usize,
    r: f64,
    u1: f64,
    u2: f64,
) -> Result<ConditionalHessians> {
    let pc: PairCovariance = pair_covariance(params, r, u1, u2)?;
    let p = params.p_f64();
    let d = n - 1;
    let corner = d - 1;
    let vech: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .collect();
    let m = vech.len();
    let q = (n as f64 - 1.0) * p * (p - 1.0);
    let mut mean = DVector::zeros(2 * m);
    for (a, (mi, ui)) in [(0usize, (pc.m1, u1)), (1, (pc.m2, u2))] {
        for (k, &(i, j)) in vech.iter().enumerate() {
            let idx = a * m + k;
            if i == j {
                mean[idx] -= (p / ((n as f64 - 1.0) * (p - 1.0))).sqrt() * ui;
            }
            if i == corner && j == corner {
                mean[idx] += mi / q.sqrt();
            }
        }
    }
    let gcross = crate::complexity::ipow(r, params.p() as i32 - 2);
    let entry = |same: bool, ij: (usize, usize), kl: (usize, usize)| -> f64 {
        let (i, j) = ij;
        let (k, l) = kl;
        let in_g = |a: usize, b: usize| a < corner && b < corner;
        if in_g(i, j) && in_g(k, l) {
            if (i, j) == (k, l) {
                let v = if i == j { 2.0 } else { 1.0 } / (n as f64 - 1.0);
                return if same { v } else { v * gcross };
            }
            return 0.0;
        }
        let is_z = |a: usize, b: usize| a < corner && b == corner;
        if is_z(i, j) && is_z(k, l) {
            if i == k {
                return if same { pc.sigma_z[0][0] } else { pc.sigma_z[0][1] } / q;
            }
            return 0.0;
        }
        if i == corner && j == corner && k == corner && l == corner {
            return if same { pc.sigma_q[0][0] } else { pc.sigma_q[0][1] } / q;
        }
        0.0
    };
    let mut cov = DMatrix::zeros(2 * m, 2 * m);
    for a in 0..2 {
        for b in 0..2 {
            for (x, &ij) in vech.iter().enumerate() {
                for (y, &kl) in vech.iter().enumerate() {
                    cov[(a * m + x, b * m + y)] = entry(a == b, ij, kl);
                }
            }
        }
    }
    Ok(ConditionalHessians { mean, cov, vech })
}

/// Entrywise comparison of the Schur oracle and the engine prediction.
pub fn compare_at(
    params: ModelParams,
    n: usize,
    r: f64,
    u1: f64,
    u2: f64,
) -> Result<ComparisonReport> {
    let frames = build_frames(n, r)?;
    let oracle = condition_hessians(params.p(), &frames, u1, u2)?;
    let engine = engine_prediction(params, n, r, u1, u2)?;
    let m = oracle.vech.len();
    let mut rows = Vec::with_capacity(2 * m + 4 * m * m);
    let name = |a: usize, k: usize| {
        let (i, j) = oracle.vech[k];
        format!("H{}[{},{}]", a + 1, i, j)
    };
    for a in 0..2 {
        for k in 0..m {
            rows.push(ComparisonRow {
                label: format!("mean {}", name(a, k)),
                oracle: oracle.mean[a * m + k],
                engine: engine.mean[a * m + k],
            });
        }
    }
    for x in 0..2 * m {
        for y in x..2 * m {
            rows.push(ComparisonRow {
                label: format!(
                    "cov {} {}",
                    name(x / m, x % m),
                    name(y / m, y % m)
                ),
                oracle: oracle.cov[(x, y)],
                engine: engine.cov[(x, y)],
            });
        }
    }
    let max_abs_diff = rows.iter().map(|r| r.abs_diff()).fold(0.0, f64::max);
    Ok(ComparisonReport { rows, max_abs_diff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn frames_satisfy_invariants() {
        for (n, r) in [(4usize, 0.0), (6, 0.5), (6, -0.5), (5, 0.93)] {
            let f = build_frames(n, r).unwrap();
            assert_abs_diff_eq!(f.point1.dot(&f.point2), r, epsilon = 1e-12);
            assert_abs_diff_eq!(f.point1.norm(), 1.0, epsilon = 1e-12);
            for fr in [&f.frame1, &f.frame2] {
                for (i, a) in fr.iter().enumerate() {
                    for (j, b) in fr.iter().enumerate() {
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert_abs_diff_eq!(a.dot(b), want, epsilon = 1e-12);
                    }
                }
            }
            for i in 0..n - 2 {
                assert_eq!(f.frame1[i], f.frame2[i]);
            }
            // Tangency and in-plane condition for the geodesic vectors.
            assert_abs_diff_eq!(f.frame1[n - 2].dot(&f.point1), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(f.frame2[n - 2].dot(&f.point2), 0.0, epsilon = 1e-12);
            for i in 0..n - 2 {
                assert_abs_diff_eq!(f.frame1[n - 2][i], 0.0, epsilon = 1e-15);
            }
        }
        assert!(build_frames(6, 1.0).is_err());
    }

    #[test]
    fn joint_covariance_basic_entries() {
        let frames = build_frames(6, 0.3).unwrap();
        let j = joint_covariance(5, &frames);
        assert_abs_diff_eq!(j.cov[(0, 0)], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(j.cov[(0, 1)], 0.3f64.powi(5), epsilon = 1e-12);
        // Symmetric PSD.
        let m = j.cov.nrows();
        for x in 0..m {
            for y in 0..m {
                assert_abs_diff_eq!(j.cov[(x, y)], j.cov[(y, x)], epsilon = 1e-11);
            }
        }
        let min_ev = sym_eigenvalues(&j.cov)[0];
        assert!(min_ev > -1e-10, "joint covariance not PSD: {min_ev}");
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        // The fourth-order stencils scale rounding noise by 1/h^4, so steps
        // below ~1e-3 drown in cancellation; Richardson over h and h/2 then
        // removes the O(h^2) truncation and lands inside the 1e-3 tolerance.
        let frames = build_frames(5, 0.3).unwrap();
        let a = joint_covariance(5, &frames);
        let h = 8e-3;
        let coarse = joint_covariance_fd(5, &frames, h);
        let fine = joint_covariance_fd(5, &frames, h / 2.0);
        let mut worst = 0.0f64;
        for x in 0..a.cov.nrows() {
            for y in 0..a.cov.ncols() {
                let fd = (4.0 * fine.cov[(x, y)] - coarse.cov[(x, y)]) / 3.0;
                worst = worst.max((a.cov[(x, y)] - fd).abs());
            }
        }
        assert!(worst < 1e-3, "FD cross-check failed: {worst}");
    }

    #[test]
    fn conditional_matches_engine_spot_checks() {
        for (p, r, u) in [
            (3u32, 0.05, (0.0, 0.0)),
            (3, -0.5, (1.0, -2.0)),
            (5, 0.3, (-1.0, -1.0)),
            (32, 0.8, (1.0, -2.0)),
        ] {
            let rep = compare_at(ModelParams::new(p, 8).unwrap(), 6, r, u.0, u.1).unwrap();
            assert!(
                rep.max_abs_diff < 1e-6,
                "p={p} r={r}: max diff {}",
                rep.max_abs_diff
            );
        }
    }

    #[test]
    fn decorrelated_at_zero_overlap_for_p_at_least_5() {
        let frames = build_frames(6, 0.0).unwrap();
        let cond = condition_hessians(5, &frames, 0.7, -0.2).unwrap();
        let m = cond.vech.len();
        for x in 0..m {
            for y in 0..m {
                assert!(
                    cond.cov[(x, m + y)].abs() < 1e-10,
                    "cross block nonzero at ({x},{y}): {}",
                    cond.cov[(x, m + y)]
                );
            }
        }
    }

    #[test]
    fn relabeling_symmetry() {
        // Swapping (s1,u1) <-> (s2,u2) swaps the output blocks.
        let pars = ModelParams::new(4, 8).unwrap();
        let (r, u1, u2) = (0.35, 0.9, -1.4);
        let a = {
            let frames = build_frames(6, r).unwrap();
            condition_hessians(pars.p(), &frames, u1, u2).unwrap()
        };
        let b = {
            let frames = build_frames(6, r).unwrap();
            condition_hessians(pars.p(), &frames, u2, u1).unwrap()
        };
        let m = a.vech.len();
        for k in 0..m {
            assert_abs_diff_eq!(a.mean[k], b.mean[m + k], epsilon = 1e-10);
            assert_abs_diff_eq!(a.mean[m + k], b.mean[k], epsilon = 1e-10);
        }
        for x in 0..m {
            for y in 0..m {
                assert_abs_diff_eq!(a.cov[(x, y)], b.cov[(m + x, m + y)], epsilon = 1e-10);
                assert_abs_diff_eq!(a.cov[(x, m + y)], b.cov[(m + x, y)], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn corner_mean_carries_m_shift() {
        // Conditional mean of the corner is -sqrt(p/((n-1)(p-1))) u_i + m_i/sqrt((n-1)p(p-1)).
        let pars = ModelParams::new(3, 8).unwrap();
        let (n, r, u1, u2) = (6usize, 0.4, 1.0, -0.5);
        let frames = build_frames(n, r).unwrap();
        let cond = condition_hessians(3, &frames, u1, u2).unwrap();
        let pc = pair_covariance(pars, r, u1, u2).unwrap();
        let m = cond.vech.len();
        let corner_idx = m - 1; // (d-1, d-1) is last in vech order
        let p = 3.0;
        let q = (n as f64 - 1.0) * p * (p - 1.0);
        let want1 = -(p / ((n as f64 - 1.0) * (p - 1.0))).sqrt() * u1 + pc.m1 / q.sqrt();
        let want2 = -(p / ((n as f64 - 1.0) * (p - 1.0))).sqrt() * u2 + pc.m2 / q.sqrt();
        assert_abs_diff_eq!(cond.mean[corner_idx], want1, epsilon = 1e-10);
        assert_abs_diff_eq!(cond.mean[m + corner_idx], want2, epsilon = 1e-10);
    }
}
