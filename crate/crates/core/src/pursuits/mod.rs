//! Greedy pursuits with replacement: CoSaMP, Subspace Pursuit and IHT.
//!
//! All three follow their textbook pseudo code step by step. The shared
//! stopping rule ends a run when the residual falls below
//! `residual_tol·‖y‖₂`, when its relative change drops below `stall_tol`,
//! when the run diverges, or after `max_iters` iterations.

mod cosamp;
mod iht;
mod sp;

pub use cosamp::cosamp;
pub use iht::iht;
pub use sp::sp;

use nalgebra::SVD;

use crate::error::{invalid, Result};
use crate::linalg::{restrict, select_columns, top_k_support};
use crate::signal::Signal;
use crate::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Cosamp,
    Sp,
    Iht,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Cosamp, Algorithm::Sp, Algorithm::Iht];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cosamp => "cosamp",
            Algorithm::Sp => "sp",
            Algorithm::Iht => "iht",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cosamp" => Ok(Algorithm::Cosamp),
            "sp" => Ok(Algorithm::Sp),
            "iht" => Ok(Algorithm::Iht),
            other => invalid(format!("unknown algorithm '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PursuitOptions {
    pub k: usize,
    pub max_iters: usize,
    pub residual_tol: f64,
    pub stall_tol: f64,
    pub divergence_factor: f64,
    /// Keep every iterate `s^[l]`, starting with `s^[0]`.
    pub track_iterates: bool,
}

impl PursuitOptions {
    pub fn new(algorithm: Algorithm, k: usize) -> Self {
        let max_iters = match algorithm {
            Algorithm::Cosamp | Algorithm::Sp => 100,
            Algorithm::Iht => 300,
        };
        Self {
            k,
            max_iters,
            residual_tol: 1e-6,
            stall_tol: 1e-7,
            divergence_factor: 10.0,
            track_iterates: false,
        }
    }

    pub fn tracking(mut self) -> Self {
        self.track_iterates = true;
        self
    }

    fn validate(&self, a: &Matrix, y: &Vector) -> Result<()> {
        if a.nrows() != y.len() {
            return invalid(format!("A has {} rows but y has {} entries", a.nrows(), y.len()));
        }
        if self.k == 0 || self.k > a.ncols() {
            return invalid(format!("sparsity k = {} must satisfy 1 <= k <= N = {}", self.k, a.ncols()));
        }
        if self.max_iters == 0 {
            return invalid("max_iters must be at least 1");
        }
        if !(self.residual_tol >= 0.0) || !(self.stall_tol >= 0.0) {
            return invalid("tolerances must be nonnegative");
        }
        if !(self.divergence_factor > 1.0) {
            return invalid("divergence factor must exceed 1");
        }
        if y.iter().any(|v| !v.is_finite()) || a.iter().any(|v| !v.is_finite()) {
            return invalid("inputs must be finite");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryOutput {
    /// At most K nonzeros.
    pub estimate: Signal,
    /// Nonzero index set of `estimate`, ascending.
    pub support: Vec<usize>,
    pub iterations: usize,
    /// `‖r‖₂` before the first iteration and after each one.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub diverged: bool,
    /// Some least-squares subproblem was rank deficient and solved in the
    /// minimum-norm sense.
    pub rank_deficient: bool,
    /// Iterates `s^[0], s^[1], …` when tracking was requested.
    pub iterates: Vec<Vector>,
}

/// Runs one of the three pursuits.
pub fn recover(algorithm: Algorithm, a: &Matrix, y: &Vector, opts: &PursuitOptions) -> Result<RecoveryOutput> {
    match algorithm {
        Algorithm::Cosamp => cosamp(a, y, opts),
        Algorithm::Sp => sp(a, y, opts),
        Algorithm::Iht => iht(a, y, opts),
    }
}

/// Keeps the `k` largest-magnitude entries (lowest index wins ties).
pub fn hard_threshold(v: &Vector, k: usize) -> Result<Vector> {
    if k == 0 || k > v.len() {
        return invalid(format!("k = {k} must satisfy 1 <= k <= {}", v.len()));
    }
    Ok(restrict(v.as_slice(), &top_k_support(v.as_slice(), k)))
}

/// Support of `v_K`: the k largest-magnitude indices that are nonzero.
pub(crate) fn thresholded_support(v: &Vector, k: usize) -> Vec<usize> {
    let mut s = top_k_support(v.as_slice(), k);
    s.retain(|&i| v[i] != 0.0);
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares {
    /// Full-length solution, zero off the support.
    pub x: Vector,
    pub rank_deficient: bool,
}

/// Least squares on the columns in `support`: `x_S = A_S† y`, `x_{S^c} = 0`.
///
/// Full-rank subproblems go through a Householder QR. Rank-deficient or
/// underdetermined ones fall back to the minimum-norm SVD solution and set
/// the flag.
pub fn ls_on_support(a: &Matrix, y: &Vector, support: &[usize]) -> Result<LeastSquares> {
    let (m, n) = a.shape();
    if y.len() != m {
        return invalid("measurement length does not match matrix rows");
    }
    if support.iter().any(|&i| i >= n) {
        return invalid("support index out of range");
    }
    let mut x = Vector::zeros(n);
    if support.is_empty() {
        return Ok(LeastSquares { x, rank_deficient: false });
    }
    let sub = select_columns(a, support);
    let k = support.len();
    let (coef, rank_deficient) = if k <= m {
        match qr_solve(sub.clone(), y) {
            Some(c) => (c, false),
            None => (min_norm_solve(sub, y), true),
        }
    } else {
        (min_norm_solve(sub, y), true)
    };
    for (c, &i) in coef.iter().zip(support) {
        x[i] = *c;
    }
    Ok(LeastSquares { x, rank_deficient })
}

fn qr_solve(sub: Matrix, y: &Vector) -> Option<Vector> {
    let (m, k) = sub.shape();
    let qr = sub.qr();
    let r = qr.r();
    let diag_max = (0..k).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    let cutoff = m.max(k) as f64 * f64::EPSILON * diag_max;
    if diag_max == 0.0 || (0..k).any(|i| r[(i, i)].abs() <= cutoff) {
        return None;
    }
    let mut rhs = y.clone();
    qr.q_tr_mul(&mut rhs);
    let head = rhs.rows(0, k).into_owned();
    r.solve_upper_triangular(&head)
}

fn min_norm_solve(sub: Matrix, y: &Vector) -> Vector {
    let (m, k) = sub.shape();
    let svd = SVD::new(sub, true, true);
    let smax = svd.singular_values.max();
    let eps = m.max(k) as f64 * f64::EPSILON * smax;
    svd.solve(y, eps.max(f64::MIN_POSITIVE))
        .unwrap_or_else(|_| Vector::zeros(k))
}

/// Shared stopping bookkeeping.
pub(crate) struct Monitor<'a> {
    opts: &'a PursuitOptions,
    y_norm: f64,
    pub history: Vec<f64>,
    pub converged: bool,
    pub diverged: bool,
}

impl<'a> Monitor<'a> {
    pub fn new(opts: &'a PursuitOptions, y: &Vector, initial_residual: f64) -> Self {
        Self { opts, y_norm: y.norm(), history: vec![initial_residual], converged: false, diverged: false }
    }

    pub fn iterations(&self) -> usize {
        self.history.len() - 1
    }

    /// Records a residual norm and reports whether the run should stop.
    pub fn step(&mut self, residual: f64) -> bool {
        let prev = *self.history.last().unwrap();
        self.history.push(residual);
        if !residual.is_finite() || residual > self.opts.divergence_factor * self.y_norm {
            self.diverged = true;
            return true;
        }
        if residual <= self.opts.residual_tol * self.y_norm {
            self.converged = true;
            return true;
        }
        if prev > 0.0 && (residual - prev).abs() < self.opts.stall_tol * prev {
            self.converged = true;
            return true;
        }
        self.iterations() >= self.opts.max_iters
    }

    pub fn flag_divergence(&mut self) {
        self.diverged = true;
        self.converged = false;
    }

    pub fn finish(self, estimate: Vector, rank_deficient: bool, iterates: Vec<Vector>) -> RecoveryOutput {
        let support = crate::linalg::nonzero_support(&estimate);
        RecoveryOutput {
            estimate: Signal::from_vector_unchecked(estimate),
            support,
            iterations: self.history.len() - 1,
            residual_history: self.history,
            converged: self.converged,
            diverged: self.diverged,
            rank_deficient,
            iterates,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn randn(len: usize, rng: &mut ChaCha8Rng) -> Vector {
        Vector::from_fn(len, |_, _| rng.sample(StandardNormal))
    }

    #[test]
    fn threshold_examples() {
        let v = Vector::from_vec(vec![3.0, -1.0, 2.0]);
        assert_eq!(hard_threshold(&v, 2).unwrap().as_slice(), &[3.0, 0.0, 2.0]);
        let z = Vector::zeros(4);
        assert_eq!(hard_threshold(&z, 2).unwrap(), z);
        assert!(hard_threshold(&v, 0).is_err());
        assert!(hard_threshold(&v, 4).is_err());
    }

    #[test]
    fn threshold_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let v = randn(12, &mut rng);
        let h = hard_threshold(&v, 5).unwrap();
        let best = (0..12)
            .combinations(5)
            .map(|s| (&v - restrict(v.as_slice(), &s)).norm())
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!((&v - &h).norm(), best, max_relative = 1e-14);
    }

    #[test]
    fn ls_identity() {
        let a = Matrix::identity(4, 4);
        let y = Vector::from_vec(vec![1.0, 2.0, 3.0, 4.0]);
        let ls = ls_on_support(&a, &y, &[0, 2]).unwrap();
        assert_eq!(ls.x.as_slice(), &[1.0, 0.0, 3.0, 0.0]);
        assert!(!ls.rank_deficient);
    }

    #[test]
    fn ls_interpolates_in_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Matrix::from_fn(30, 50, |_, _| rng.sample::<f64, _>(StandardNormal));
        let support = [3usize, 8, 21, 40];
        let mut truth = Vector::zeros(50);
        for &i in &support {
            truth[i] = rng.sample(StandardNormal);
        }
        let y = &a * &truth;
        let ls = ls_on_support(&a, &y, &support).unwrap();
        assert!((&y - &a * &ls.x).norm() <= 1e-10 * y.norm().max(1.0));
    }

    #[test]
    fn ls_residual_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Matrix::from_fn(40, 60, |_, _| rng.sample::<f64, _>(StandardNormal));
        let y = randn(40, &mut rng);
        let support = [0usize, 5, 9, 17, 33, 59];
        let ls = ls_on_support(&a, &y, &support).unwrap();
        let r = &y - &a * &ls.x;
        for &j in &support {
            assert!(a.column(j).dot(&r).abs() <= 1e-10 * y.norm());
        }
    }

    #[test]
    fn ls_rank_deficient_min_norm() {
        let mut a = Matrix::zeros(3, 3);
        a[(0, 0)] = 1.0;
        a[(0, 1)] = 1.0;
        a[(1, 2)] = 1.0;
        let y = Vector::from_vec(vec![2.0, 1.0, 0.0]);
        let ls = ls_on_support(&a, &y, &[0, 1, 2]).unwrap();
        assert!(ls.rank_deficient);
        assert_relative_eq!(ls.x, Vector::from_vec(vec![1.0, 1.0, 1.0]), epsilon = 1e-12);
        // more columns than rows
        let wide = Matrix::from_fn(2, 4, |r, c| (r * 4 + c) as f64 + 1.0);
        let ls = ls_on_support(&wide, &Vector::from_vec(vec![1.0, 2.0]), &[0, 1, 2, 3]).unwrap();
        assert!(ls.rank_deficient);
        assert_relative_eq!(&wide * &ls.x, Vector::from_vec(vec![1.0, 2.0]), epsilon = 1e-10);
    }

    #[test]
    fn options_validation() {
        let a = Matrix::identity(3, 3);
        let y = Vector::zeros(3);
        let mut o = PursuitOptions::new(Algorithm::Cosamp, 4);
        assert!(cosamp(&a, &y, &o).is_err());
        o.k = 1;
        o.divergence_factor = 1.0;
        assert!(cosamp(&a, &y, &o).is_err());
        let o = PursuitOptions::new(Algorithm::Iht, 1);
        assert!(iht(&a, &Vector::zeros(2), &o).is_err());
    }
}
