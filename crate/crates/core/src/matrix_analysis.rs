//! Spectral norms, restricted isometry constants and K-column norms.
//!
//! The RIC of level K is `max_S max(λ_max(A_SᵀA_S) − 1, 1 − λ_min(A_SᵀA_S))`
//! over all K-column subsets S. Exact enumeration is only feasible for tiny
//! matrices; at scale the sampled estimate is a lower bound.

use itertools::Itertools;
use nalgebra::SymmetricEigen;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::linalg::{n_choose_k, sub_gram, sym_extreme_eigenvalues};
use crate::{Matrix, Vector};

pub const DEFAULT_ENUMERATION_CAP: u128 = 20_000;
pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-10;
pub const DEFAULT_POWER_ITERS: usize = 10_000;

/// Matrices whose smaller side is at most this use a dense SVD.
const DENSE_SVD_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RicMethod {
    Exact,
    MonteCarloLowerBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicEstimate {
    pub k: usize,
    pub value: f64,
    pub method: RicMethod,
    /// Number of sampled subsets; zero for exact enumeration.
    pub samples: usize,
    /// Subset attaining the reported value.
    pub argmax: Vec<usize>,
}

fn check_finite(m: &Matrix) -> Result<()> {
    if m.is_empty() {
        return invalid("matrix must be nonempty");
    }
    if m.iter().any(|v| !v.is_finite()) {
        return invalid("matrix entries must be finite");
    }
    Ok(())
}

fn check_level(a: &Matrix, k: usize) -> Result<()> {
    if k == 0 || k > a.ncols() {
        return invalid(format!("level k = {k} must satisfy 1 <= k <= N = {}", a.ncols()));
    }
    Ok(())
}

/// Largest singular value `‖m‖₂`.
///
/// Small matrices use a dense SVD. Larger ones run Lanczos on the smaller
/// Gram operator (`MMᵀ` or `MᵀM`) from the normalized all-ones vector, with
/// full reorthogonalization, until the Ritz residual of the top pair is
/// below `tol` relative to the Ritz value.
pub fn spectral_norm(m: &Matrix, tol: f64) -> Result<f64> {
    check_finite(m)?;
    if !(tol > 0.0) {
        return invalid("tolerance must be positive");
    }
    if m.nrows().min(m.ncols()) <= DENSE_SVD_LIMIT {
        return Ok(m.singular_values().max());
    }
    Ok(lanczos_gram_top(m, tol).sqrt())
}

fn gram_apply(m: &Matrix, v: &Vector, wide: bool) -> Vector {
    if wide {
        // v has M entries: M (Mᵀ v)
        let t = m.tr_mul(v);
        m * t
    } else {
        let t = m * v;
        m.tr_mul(&t)
    }
}

fn lanczos_gram_top(m: &Matrix, tol: f64) -> f64 {
    let wide = m.nrows() <= m.ncols();
    let dim = if wide { m.nrows() } else { m.ncols() };
    let mut basis: Vec<Vector> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut q = Vector::from_element(dim, 1.0 / (dim as f64).sqrt());
    let mut theta = 0.0f64;
    for j in 0..dim {
        let mut w = gram_apply(m, &q, wide);
        let alpha = q.dot(&w);
        w.axpy(-alpha, &q, 1.0);
        if let (Some(prev), Some(&beta)) = (basis.last(), betas.last()) {
            w.axpy(-beta, prev, 1.0);
        }
        basis.push(q);
        alphas.push(alpha);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let beta = w.norm();

        let size = j + 1;
        // the tridiagonal eigensolve is cubic in size, so test sparingly
        let check = size < 8 || size % 4 == 0 || beta <= f64::EPSILON * theta.abs() || size == dim;
        if !check {
            betas.push(beta);
            q = w / beta;
            continue;
        }
        let mut t = Matrix::zeros(size, size);
        for i in 0..size {
            t[(i, i)] = alphas[i];
            if i + 1 < size {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imax, &top) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        theta = top;
        let residual = beta * eig.eigenvectors[(size - 1, imax)].abs();
        if residual <= tol * theta.abs() || beta <= f64::EPSILON * theta.abs() || size == dim {
            break;
        }
        betas.push(beta);
        q = w / beta;
    }
    theta.max(0.0)
}

/// Result of the plain power method on the Gram operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerMethodResult {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration on `MᵀM` from the normalized all-ones vector until the
/// Rayleigh quotient changes by less than `tol` relative, or `max_iters`.
pub fn power_method(m: &Matrix, tol: f64, max_iters: usize) -> Result<PowerMethodResult> {
    check_finite(m)?;
    let n = m.ncols();
    let mut x = Vector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut lambda = 0.0;
    for it in 1..=max_iters {
        let z = m.tr_mul(&(m * &x));
        let next = x.dot(&z);
        let norm = z.norm();
        if norm == 0.0 {
            return Ok(PowerMethodResult { value: 0.0, iterations: it, converged: true });
        }
        x = z / norm;
        if (next - lambda).abs() <= tol * next.abs() {
            return Ok(PowerMethodResult { value: next.max(0.0).sqrt(), iterations: it, converged: true });
        }
        lambda = next;
    }
    Ok(PowerMethodResult { value: lambda.max(0.0).sqrt(), iterations: max_iters, converged: false })
}

/// `max(λ_max − 1, 1 − λ_min)` of the Gram matrix of the selected columns.
pub fn isometry_deviation(a: &Matrix, support: &[usize]) -> f64 {
    let (lo, hi) = sym_extreme_eigenvalues(sub_gram(a, support));
    (hi - 1.0).max(1.0 - lo).max(0.0)
}

fn max_over<I>(a: &Matrix, subsets: I, score: impl Fn(&Matrix, &[usize]) -> f64) -> (f64, Vec<usize>)
where
    I: IntoIterator<Item = Vec<usize>>,
{
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for s in subsets {
        let v = score(a, &s);
        if v > best.0 {
            best = (v, s);
        }
    }
    best
}

fn check_budget(n: usize, k: usize, cap: u128) -> Result<()> {
    let subsets = n_choose_k(n, k);
    if subsets > cap {
        return Err(Error::BudgetExceeded { subsets, cap });
    }
    Ok(())
}

/// Exact RIC of level `k` by enumerating all `C(N, k)` column subsets.
pub fn exact_ric(a: &Matrix, k: usize, cap: u128) -> Result<RicEstimate> {
    check_finite(a)?;
    check_level(a, k)?;
    check_budget(a.ncols(), k, cap)?;
    let (value, argmax) = max_over(a, (0..a.ncols()).combinations(k), isometry_deviation);
    Ok(RicEstimate { k, value, method: RicMethod::Exact, samples: 0, argmax })
}

/// Lower bound on the RIC from `samples` uniformly drawn k-subsets.
///
/// Subsets are drawn sequentially, so the same rng state with more samples
/// evaluates a superset and never returns a smaller value. When `samples`
/// covers the whole subset space the enumeration is exhaustive.
pub fn mc_ric_lower_bound<R: Rng + ?Sized>(
    a: &Matrix,
    k: usize,
    samples: usize,
    rng: &mut R,
) -> Result<RicEstimate> {
    check_finite(a)?;
    check_level(a, k)?;
    if samples == 0 {
        return invalid("at least one sample is required");
    }
    let total = n_choose_k(a.ncols(), k);
    let (value, argmax, used) = if (samples as u128) >= total {
        let (v, s) = max_over(a, (0..a.ncols()).combinations(k), isometry_deviation);
        (v, s, total as usize)
    } else {
        let n = a.ncols();
        let draws = (0..samples).map(|_| {
            let mut s = index::sample(rng, n, k).into_vec();
            s.sort_unstable();
            s
        });
        let (v, s) = max_over(a, draws, isometry_deviation);
        (v, s, samples)
    };
    Ok(RicEstimate { k, value, method: RicMethod::MonteCarloLowerBound, samples: used, argmax })
}

/// How `‖A‖₂^(K)` is searched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubsetSearch {
    Exact { cap: u128 },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KColumnNorm {
    pub value: f64,
    /// Subset attaining the value.
    pub support: Vec<usize>,
    pub exact: bool,
}

fn sub_spectral_norm(a: &Matrix, support: &[usize]) -> f64 {
    sym_extreme_eigenvalues(sub_gram(a, support)).1.max(0.0).sqrt()
}

/// Largest spectral norm over K-column submatrices, `‖A‖₂^(K)`.
pub fn k_col_spectral_norm(a: &Matrix, k: usize, mode: SubsetSearch) -> Result<KColumnNorm> {
    check_finite(a)?;
    check_level(a, k)?;
    match mode {
        SubsetSearch::Exact { cap } => {
            check_budget(a.ncols(), k, cap)?;
            let (value, support) = max_over(a, (0..a.ncols()).combinations(k), sub_spectral_norm);
            Ok(KColumnNorm { value, support, exact: true })
        }
        SubsetSearch::Sampled { samples, seed } => {
            if samples == 0 {
                return invalid("at least one sample is required");
            }
            let total = n_choose_k(a.ncols(), k);
            if (samples as u128) >= total {
                return k_col_spectral_norm(a, k, SubsetSearch::Exact { cap: total });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = a.ncols();
            let draws = (0..samples).map(|_| {
                let mut s = index::sample(&mut rng, n, k).into_vec();
                s.sort_unstable();
                s
            });
            let (value, support) = max_over(a, draws, sub_spectral_norm);
            Ok(KColumnNorm { value, support, exact: false })
        }
    }
}

/// `ε_A^(K) = ‖E‖₂^(K) / ‖A‖₂^(K)` by exact enumeration.
pub fn exact_relative_k_perturbation(a: &Matrix, e: &Matrix, k: usize, cap: u128) -> Result<f64> {
    if a.shape() != e.shape() {
        return invalid("A and E must have the same shape");
    }
    let na = k_col_spectral_norm(a, k, SubsetSearch::Exact { cap })?.value;
    let ne = k_col_spectral_norm(e, k, SubsetSearch::Exact { cap })?.value;
    if na == 0.0 {
        return invalid("A has zero K-column norm");
    }
    Ok(ne / na)
}

/// Upper bound `(1+δ_K)(1+ε_A^(K))² − 1` on the RIC of `A + E`.
pub fn perturbed_ric_bound(delta_k: f64, eps_a_k: f64) -> Result<f64> {
    if !(delta_k >= 0.0) || !(eps_a_k >= 0.0) {
        return invalid("RIC and relative perturbation must be nonnegative");
    }
    Ok((1.0 + delta_k) * (1.0 + eps_a_k).powi(2) - 1.0)
}

/// Numerical rank of `m` with the usual `max(m, n)·ε·σ_max` cutoff.
pub fn numerical_rank(m: &Matrix) -> usize {
    let sv = m.singular_values();
    let cutoff = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * sv.max();
    sv.iter().filter(|s| **s > cutoff).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::select_columns;
    use crate::sensing::gen_gaussian_sensing;
    use approx::assert_relative_eq;

    fn gaussian(m: usize, n: usize, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        gen_gaussian_sensing(m, n, &mut rng).unwrap()
    }

    #[test]
    fn spectral_norm_small_cases() {
        assert_relative_eq!(spectral_norm(&Matrix::identity(5, 5), 1e-10).unwrap(), 1.0, epsilon = 1e-14);
        let d = Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 1.0, 0.5]));
        assert_relative_eq!(spectral_norm(&d, 1e-10).unwrap(), 3.0, epsilon = 1e-14);
        assert!(spectral_norm(&Matrix::zeros(0, 0), 1e-10).is_err());
        let mut bad = d.clone();
        bad[(0, 1)] = f64::NAN;
        assert!(spectral_norm(&bad, 1e-10).is_err());
    }

    #[test]
    fn spectral_norm_matches_svd_on_random() {
        let a = gaussian(50, 80, 9);
        let svd = a.singular_values().max();
        assert_relative_eq!(spectral_norm(&a, 1e-10).unwrap(), svd, max_relative = 1e-10);
    }

    #[test]
    fn lanczos_matches_dense_svd_on_large() {
        for (m, n, seed) in [(100, 300, 1u64), (200, 120, 2), (128, 512, 3)] {
            let a = gaussian(m, n, seed);
            let svd = a.singular_values().max();
            let lz = spectral_norm(&a, 1e-10).unwrap();
            assert_relative_eq!(lz, svd, max_relative = 1e-9);
        }
    }

    #[test]
    fn power_method_agrees_with_lanczos() {
        let a = gaussian(80, 200, 4);
        let pm = power_method(&a, 1e-12, 100_000).unwrap();
        assert!(pm.converged);
        assert_relative_eq!(pm.value, a.singular_values().max(), max_relative = 1e-6);
        let d = Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 1.0, 0.5]));
        assert_relative_eq!(power_method(&d, 1e-12, 10_000).unwrap().value, 3.0, max_relative = 1e-9);
    }

    #[test]
    fn ric_orthonormal_is_zero() {
        let q = Matrix::identity(6, 6);
        for k in 1..=6 {
            assert!(exact_ric(&q, k, DEFAULT_ENUMERATION_CAP).unwrap().value.abs() < 1e-14);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(mc_ric_lower_bound(&q, 3, 10, &mut rng).unwrap().value.abs() < 1e-14);
    }

    #[test]
    fn ric_duplicate_columns() {
        let mut a = Matrix::zeros(3, 3);
        a[(0, 0)] = 1.0;
        a[(0, 1)] = 1.0;
        a[(2, 2)] = 1.0;
        let r = exact_ric(&a, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-14);
        assert_eq!(r.argmax, vec![0, 1]);
    }

    #[test]
    fn ric_pairs_match_closed_form() {
        // 2x2 Gram [[a, c], [c, b]] has eigenvalues (a+b)/2 ± sqrt(((a-b)/2)² + c²)
        let a = gaussian(8, 12, 21);
        let exact = exact_ric(&a, 2, DEFAULT_ENUMERATION_CAP).unwrap().value;
        let mut best: f64 = 0.0;
        for i in 0..12 {
            for j in i + 1..12 {
                let (ci, cj) = (a.column(i), a.column(j));
                let (p, q, c) = (ci.dot(&ci), cj.dot(&cj), ci.dot(&cj));
                let mid = 0.5 * (p + q);
                let rad = (0.25 * (p - q).powi(2) + c * c).sqrt();
                best = best.max(mid + rad - 1.0).max(1.0 - (mid - rad));
            }
        }
        assert_relative_eq!(exact, best, max_relative = 1e-12);
    }

    #[test]
    fn ric_budget() {
        let a = gaussian(10, 40, 1);
        match exact_ric(&a, 10, DEFAULT_ENUMERATION_CAP) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn ric_monotone_in_level() {
        let a = gaussian(10, 9, 4);
        let mut prev = 0.0;
        for k in 1..=5 {
            let v = exact_ric(&a, k, DEFAULT_ENUMERATION_CAP).unwrap().value;
            assert!(v + 1e-12 >= prev);
            prev = v;
        }
    }

    #[test]
    fn mc_exhaustive_equals_exact() {
        let a = gaussian(6, 8, 5);
        let exact = exact_ric(&a, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mc = mc_ric_lower_bound(&a, 3, 56, &mut rng).unwrap();
        assert_eq!(mc.value, exact.value);
        assert_eq!(mc.samples, 56);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let partial = mc_ric_lower_bound(&a, 3, 20, &mut rng).unwrap();
        assert!(partial.value <= exact.value);
    }

    #[test]
    fn mc_monotone_with_samples_at_scale() {
        let a = gaussian(512, 2048, 77);
        let mut prev = 0.0;
        for samples in [25, 50, 100, 200] {
            let mut rng = ChaCha8Rng::seed_from_u64(123);
            let v = mc_ric_lower_bound(&a, 10, samples, &mut rng).unwrap().value;
            assert!(v > 0.0 && v < 1.0, "value {v}");
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn k_col_norm_cases() {
        let id = Matrix::identity(5, 5);
        for k in 1..=5 {
            let r = k_col_spectral_norm(&id, k, SubsetSearch::Exact { cap: 1000 }).unwrap();
            assert_relative_eq!(r.value, 1.0, epsilon = 1e-14);
        }
        let d = Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 1.0, 0.5]));
        let r = k_col_spectral_norm(&d, 1, SubsetSearch::Exact { cap: 1000 }).unwrap();
        assert_relative_eq!(r.value, 3.0, epsilon = 1e-14);
        assert_eq!(r.support, vec![0]);
    }

    #[test]
    fn k_col_norm_matches_svd_enumeration() {
        let a = gaussian(8, 12, 31);
        let r = k_col_spectral_norm(&a, 3, SubsetSearch::Exact { cap: 1000 }).unwrap();
        let best = (0..12)
            .combinations(3)
            .map(|s| select_columns(&a, &s).singular_values().max())
            .fold(0.0, f64::max);
        assert_relative_eq!(r.value, best, max_relative = 1e-12);
        assert!(r.value <= a.singular_values().max() + 1e-12);
        let max_col = (0..12).map(|j| a.column(j).norm()).fold(0.0, f64::max);
        assert!(r.value + 1e-12 >= max_col);

        let sampled = k_col_spectral_norm(&a, 3, SubsetSearch::Sampled { samples: 30, seed: 2 }).unwrap();
        assert!(!sampled.exact && sampled.value <= r.value + 1e-12);
    }

    #[test]
    fn perturbed_bound_formula() {
        assert_eq!(perturbed_ric_bound(0.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(perturbed_ric_bound(0.2, 0.1).unwrap(), 0.452, epsilon = 1e-14);
        assert!(perturbed_ric_bound(-0.1, 0.0).is_err());
        assert!(perturbed_ric_bound(0.1, -0.1).is_err());
    }

    #[test]
    fn ric_below_one_implies_full_rank() {
        for seed in 0..30 {
            let a = gaussian(7, 10, 500 + seed);
            for k in 1..=3 {
                let r = exact_ric(&a, k, DEFAULT_ENUMERATION_CAP).unwrap();
                if r.value < 1.0 {
                    for s in (0..10).combinations(k) {
                        assert_eq!(numerical_rank(&select_columns(&a, &s)), k);
                    }
                }
            }
        }
    }

    #[test]
    fn lemma1_norm_bound() {
        // ‖As‖₂ ≤ √(1+δ_K)(‖s‖₂ + ‖s‖₁/√K) for arbitrary s
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for seed in 0..20 {
            let a = gaussian(8, 10, 900 + seed);
            for k in 1..=3 {
                let delta = exact_ric(&a, k, DEFAULT_ENUMERATION_CAP).unwrap().value;
                for _ in 0..10 {
                    let s = Vector::from_fn(10, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
                    let lhs = (&a * &s).norm();
                    let rhs = (1.0 + delta).sqrt() * (s.norm() + crate::linalg::l1_norm(&s) / (k as f64).sqrt());
                    assert!(lhs <= rhs * (1.0 + 1e-12));
                }
            }
        }
    }
}
