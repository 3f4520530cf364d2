//! Oracle least-squares recovery and the adversarial instances on which its
//! error is bounded from below.

use crate::error::{invalid, Result};
use crate::linalg::select_columns;
use crate::matrix_analysis::{k_col_spectral_norm, KColumnNorm, SubsetSearch};
use crate::pursuits::ls_on_support;
use crate::signal::Signal;
use crate::{Matrix, Vector};

/// `ŝ_S = Ã_S† ỹ`, zero off `support`.
pub fn oracle_ls(a_tilde: &Matrix, y_tilde: &Vector, support: &[usize]) -> Result<Signal> {
    if support.is_empty() {
        return invalid("oracle support must be nonempty");
    }
    if support.len() > a_tilde.nrows() {
        return invalid(format!(
            "oracle support of size {} exceeds {} rows",
            support.len(),
            a_tilde.nrows()
        ));
    }
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != support.len() {
        return invalid("oracle support has repeated indices");
    }
    let ls = ls_on_support(a_tilde, y_tilde, &sorted)?;
    Signal::new(ls.x)
}

/// Splits `‖s − ŝ‖₂²` into the on-support part `‖(s − ŝ)_S‖₂²` and the
/// off-support part `‖s_{S^c}‖₂²`.
pub fn error_decomposition(s: &Signal, s_hat: &Signal, support: &[usize]) -> Result<(f64, f64)> {
    let n = s.n();
    if s_hat.n() != n {
        return invalid("signal lengths differ");
    }
    let mut on = vec![false; n];
    for &i in support {
        if i >= n {
            return invalid("support index out of range");
        }
        on[i] = true;
    }
    let (mut on_sq, mut off_sq) = (0.0, 0.0);
    for i in 0..n {
        let (si, hi) = (s.as_slice()[i], s_hat.as_slice()[i]);
        if on[i] {
            on_sq += (si - hi) * (si - hi);
        } else {
            if hi != 0.0 {
                return invalid(format!("estimate is nonzero off the support at index {i}"));
            }
            off_sq += si * si;
        }
    }
    Ok((on_sq, off_sq))
}

/// Signal, noise and perturbation for which the oracle error is provably
/// of the same order as the greedy-pursuit bounds.
#[derive(Debug, Clone)]
pub struct AdversarialInstance {
    pub a: Matrix,
    /// `s = s_K + s_K^c`.
    pub s: Signal,
    pub head: Signal,
    pub tail: Signal,
    pub e_vec: Vector,
    /// `E = ε·A`.
    pub e_mat: Matrix,
    pub a_tilde: Matrix,
    /// `ỹ = A s + e`.
    pub y_tilde: Vector,
    /// Oracle set S, sorted.
    pub support: Vec<usize>,
    pub tail_support: Vec<usize>,
    pub eps_a_k: f64,
    /// `‖A‖₂^(K)` as found by the subset search.
    pub k_norm: KColumnNorm,
    /// True when the degenerate-direction fallback was used for e.
    pub noise_fallback: bool,
}

impl AdversarialInstance {
    /// `‖E‖₂^(K)·‖s_K‖₂`.
    pub fn es_term(&self) -> f64 {
        self.eps_a_k * self.k_norm.value * self.head.norm()
    }

    /// `‖s‖₂(r_K + s_K)` computed from the constructed tail.
    pub fn approx_term(&self) -> f64 {
        let k = self.support.len() as f64;
        self.tail.norm() + self.tail.l1_norm() / k.sqrt()
    }

    /// Effective noise `ẽ = e − E s_K + A s_K^c`.
    pub fn effective_noise(&self) -> Vector {
        &self.e_vec - &self.e_mat * self.head.values() + &self.a * self.tail.values()
    }
}

/// Builds the lower-bound instance on `a` for sparsity `k`.
///
/// S maximizes `‖A_S‖₂` over k-subsets (exactly or best sampled, per
/// `search`). `s_K` is the unit top right singular vector of `A_S`; the tail
/// has norm `tail_norm` on the lowest-indexed k columns outside S, with its
/// sign chosen so that `(−E s_K)ᵀ A_S A_Sᵀ A s_K^c ≥ 0`. The noise is
/// `noise_norm·w/‖w‖₂` with `w = A_S A_Sᵀ(−E s_K + A s_K^c)`.
pub fn build_adversarial_instance(
    a: &Matrix,
    k: usize,
    eps_a: f64,
    noise_norm: f64,
    tail_norm: f64,
    search: SubsetSearch,
) -> Result<AdversarialInstance> {
    let (m, n) = a.shape();
    if k == 0 || 2 * k > n {
        return invalid(format!("need 1 <= k and 2k <= {n} columns, got k = {k}"));
    }
    if k > m {
        return invalid("k must not exceed the number of rows");
    }
    if !(0.0..1.0).contains(&eps_a) || !(noise_norm >= 0.0) || !(tail_norm >= 0.0) {
        return invalid("need eps_a in [0, 1) and nonnegative norms");
    }
    let k_norm = k_col_spectral_norm(a, k, search)?;
    let support = k_norm.support.clone();
    let a_s = select_columns(a, &support);
    let svd = a_s.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let imax = svd.singular_values.imax();
    let top = v_t.row(imax).transpose();

    let mut head = Vector::zeros(n);
    for (j, &i) in support.iter().enumerate() {
        head[i] = top[j];
    }
    let tail_support: Vec<usize> = (0..n).filter(|i| support.binary_search(i).is_err()).take(k).collect();
    let mut tail = Vector::zeros(n);
    if tail_norm > 0.0 {
        // deterministic pattern k, k−1, ..., 1 scaled to the requested norm
        let w: Vec<f64> = (0..k).map(|j| (k - j) as f64).collect();
        let wn = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (j, &i) in tail_support.iter().enumerate() {
            tail[i] = tail_norm * w[j] / wn;
        }
    }

    let e_mat = a * eps_a;
    let es = &e_mat * &head;
    let project = |v: &Vector| -> Vector { &a_s * a_s.tr_mul(v) };
    let a_tail = a * &tail;
    if (-&es).dot(&project(&a_tail)) < 0.0 {
        tail = -tail;
    }
    let a_tail = a * &tail;
    let w = project(&(&a_tail - &es));
    let w_norm = w.norm();
    let (e_vec, noise_fallback) = if noise_norm == 0.0 {
        (Vector::zeros(m), false)
    } else if w_norm > 0.0 {
        (w * (noise_norm / w_norm), false)
    } else {
        let c = a_s.column(0).into_owned();
        let cn = c.norm();
        if cn == 0.0 {
            return invalid("first selected column is zero");
        }
        (c * (noise_norm / cn), true)
    };

    let s_vec = &head + &tail;
    let y_tilde = a * &s_vec + &e_vec;
    let a_tilde = a * (1.0 + eps_a);
    Ok(AdversarialInstance {
        a: a.clone(),
        s: Signal::new(s_vec)?,
        head: Signal::new(head)?,
        tail: Signal::new(tail)?,
        e_vec,
        e_mat,
        a_tilde,
        y_tilde,
        support,
        tail_support,
        eps_a_k: eps_a,
        k_norm,
        noise_fallback,
    })
}

/// Lower bound on `‖x − x̂‖₂` for oracle recovery on adversarial instances:
/// `(‖Ψ⁻¹‖₂⁻¹/2)(√(1−δ_K)/(1+δ̃_K)(‖e‖₂ + ‖E‖₂^(K)‖s_K‖₂) + ‖s‖₂(r_K+s_K)/√2)`.
pub fn oracle_lower_bound(
    e_norm: f64,
    es_term: f64,
    approx_term: f64,
    delta_k: f64,
    delta_tilde_k: f64,
    psi_inv_norm: f64,
) -> Result<f64> {
    if !(0.0..1.0).contains(&delta_k) || !(0.0..1.0).contains(&delta_tilde_k) {
        return invalid(format!("RICs must lie in [0, 1): {delta_k}, {delta_tilde_k}"));
    }
    if !(e_norm >= 0.0) || !(es_term >= 0.0) || !(approx_term >= 0.0) {
        return invalid("norm terms must be nonnegative");
    }
    if !(psi_inv_norm > 0.0) || !psi_inv_norm.is_finite() {
        return invalid("‖Ψ⁻¹‖₂ must be positive and finite");
    }
    let lead = (1.0 - delta_k).sqrt() / (1.0 + delta_tilde_k) * (e_norm + es_term);
    Ok(0.5 / psi_inv_norm * (lead + approx_term / 2f64.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_analysis::{exact_ric, DEFAULT_ENUMERATION_CAP};
    use crate::sensing::{gen_gaussian_sensing, make_system, Basis, Scenario};
    use crate::signal::{best_k_split, gen_power_law, gen_sparse};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exact() -> SubsetSearch {
        SubsetSearch::Exact { cap: DEFAULT_ENUMERATION_CAP }
    }

    #[test]
    fn identity_example() {
        let a = Matrix::identity(2, 2);
        let y = Vector::from_vec(vec![5.0, 7.0]);
        let s = oracle_ls(&a, &y, &[1]).unwrap();
        assert_eq!(s.as_slice()[0], 0.0);
        assert_relative_eq!(s.as_slice()[1], 7.0, epsilon = 1e-14);
    }

    #[test]
    fn noiseless_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = gen_gaussian_sensing(40, 100, &mut rng).unwrap();
        let s = gen_sparse(100, 6, &mut rng).unwrap();
        let y = &a * s.values();
        let hat = oracle_ls(&a, &y, &s.support()).unwrap();
        assert!((hat.values() - s.values()).norm() <= 1e-10 * s.norm());
        assert_eq!(error_decomposition(&s, &hat, &s.support()).unwrap().1, 0.0);
    }

    #[test]
    fn on_support_error_is_pinv_of_effective_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let phi = gen_gaussian_sensing(60, 150, &mut rng).unwrap();
        let s = gen_power_law(150, 1.0, 1.5, Some(&mut rng)).unwrap();
        let sys = make_system(&phi, &Basis::Identity, &s, 0.05, 0.05, Scenario::ModelMismatch, &mut rng).unwrap();
        let split = best_k_split(&s, 8).unwrap();
        let hat = oracle_ls(&sys.a_tilde, &sys.y_tilde, &split.support).unwrap();
        let e_tilde = sys.effective_noise(&split);
        // independent route: pseudo-inverse from the SVD of Ã_S
        let sub = select_columns(&sys.a_tilde, &split.support);
        let pinv = sub.pseudo_inverse(1e-14).unwrap();
        let rhs = pinv * e_tilde;
        for (j, &i) in split.support.iter().enumerate() {
            assert!((hat.as_slice()[i] - s.as_slice()[i] - rhs[j]).abs() <= 1e-10 * s.norm());
        }
        let (on, off) = error_decomposition(&s, &hat, &split.support).unwrap();
        let total = (hat.values() - s.values()).norm_squared();
        assert!((on + off - total).abs() <= 1e-12 * total);
        assert_relative_eq!(off, split.tail.norm().powi(2), max_relative = 1e-12);
    }

    #[test]
    fn sparse_perturbed_error_is_all_on_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = gen_gaussian_sensing(30, 60, &mut rng).unwrap();
        let s = gen_sparse(60, 4, &mut rng).unwrap();
        let sys = make_system(&phi, &Basis::Identity, &s, 0.1, 0.1, Scenario::ModelMismatch, &mut rng).unwrap();
        let hat = oracle_ls(&sys.a_tilde, &sys.y_tilde, &s.support()).unwrap();
        let (on, off) = error_decomposition(&s, &hat, &s.support()).unwrap();
        assert_eq!(off, 0.0);
        assert_relative_eq!(on, (hat.values() - s.values()).norm_squared(), max_relative = 1e-14);
    }

    #[test]
    fn decomposition_rejects_off_support_estimate() {
        let s = Signal::from_slice(&[1.0, 2.0]).unwrap();
        let h = Signal::from_slice(&[1.0, 1.0]).unwrap();
        assert!(error_decomposition(&s, &h, &[0]).is_err());
        assert!(oracle_ls(&Matrix::identity(2, 2), &Vector::zeros(2), &[]).is_err());
        assert!(oracle_ls(&Matrix::identity(2, 3), &Vector::zeros(2), &[0, 1, 2]).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(oracle_lower_bound(0.0, 0.0, 0.0, 0.1, 0.2, 1.0).unwrap(), 0.0);
        assert_eq!(oracle_lower_bound(1.0, 0.0, 0.0, 0.0, 0.0, 1.0).unwrap(), 0.5);
        assert!(oracle_lower_bound(1.0, 0.0, 0.0, 1.0, 0.0, 1.0).is_err());
    }

    fn check_invariants(inst: &AdversarialInstance) {
        let k = inst.support.len();
        let eps = inst.eps_a_k;
        assert_eq!(inst.e_mat, &inst.a * eps);
        // Eq. 39 against the exhaustive ‖A‖^(K), computed independently
        let mut best: f64 = 0.0;
        for subset in itertools::Itertools::combinations(0..inst.a.ncols(), k) {
            let sub = select_columns(&inst.a, &subset);
            best = best.max(sub.singular_values().max());
        }
        let lhs = (&inst.e_mat * inst.head.values()).norm();
        let rhs = eps * best * inst.head.norm();
        assert!((lhs - rhs).abs() <= 1e-6 * rhs.max(f64::MIN_POSITIVE) || rhs == 0.0 && lhs == 0.0);
        let a_s = select_columns(&inst.a, &inst.support);
        let proj = |v: &Vector| -> Vector { &a_s * a_s.tr_mul(v) };
        let es = &inst.e_mat * inst.head.values();
        let at = &inst.a * inst.tail.values();
        assert!((-&es).dot(&proj(&at)) >= -1e-12);
        assert!(inst.e_vec.dot(&proj(&(&at - &es))) >= -1e-12);
        let pinv = a_s.clone().pseudo_inverse(1e-14).unwrap();
        let resid = &inst.e_vec - &a_s * (pinv * &inst.e_vec);
        assert!(resid.norm() <= 1e-10 * inst.e_vec.norm().max(f64::MIN_POSITIVE));
        // disjoint K-sparse head and tail
        assert!(inst.tail_support.iter().all(|i| inst.support.binary_search(i).is_err()));
        assert!(inst.head.nnz() <= k && inst.tail.nnz() <= k);
    }

    #[test]
    fn zero_scale_gives_zero_perturbation() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = gen_gaussian_sensing(8, 12, &mut rng).unwrap();
        let inst = build_adversarial_instance(&a, 2, 0.0, 0.1, 0.1, exact()).unwrap();
        assert!(inst.e_mat.iter().all(|&v| v == 0.0));
        check_invariants(&inst);
    }

    #[test]
    fn tiny_instances_satisfy_construction_and_lower_bound() {
        let mut checked = 0;
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            // tall enough that pairs of columns stay near-isometric
            let (m, n, k) = (20 + (seed as usize % 12), 12, 2);
            let a = gen_gaussian_sensing(m, n, &mut rng).unwrap();
            let inst = build_adversarial_instance(&a, k, 0.05, 0.05, 0.1, exact()).unwrap();
            check_invariants(&inst);
            let delta = exact_ric(&a, k, DEFAULT_ENUMERATION_CAP).unwrap().value;
            let delta_t = exact_ric(&inst.a_tilde, k, DEFAULT_ENUMERATION_CAP).unwrap().value;
            if delta >= 1.0 || delta_t >= 1.0 {
                continue;
            }
            let hat = oracle_ls(&inst.a_tilde, &inst.y_tilde, &inst.support).unwrap();
            let err = (hat.values() - inst.s.values()).norm();
            let lb = oracle_lower_bound(inst.e_vec.norm(), inst.es_term(), inst.approx_term(), delta, delta_t, 1.0).unwrap();
            assert!(err >= lb, "seed {seed}: {err} < {lb}");
            checked += 1;
        }
        assert!(checked >= 20);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn pythagorean_split(seed in 0u64..10_000, m in 6usize..30, extra in 1usize..30, k in 1usize..6) {
            let n = m + extra;
            let k = k.min(m);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let phi = gen_gaussian_sensing(m, n, &mut rng).unwrap();
            let s = gen_power_law(n, 1.0, 1.2, Some(&mut rng)).unwrap();
            let sys = make_system(&phi, &Basis::Identity, &s, 0.1, 0.1, Scenario::ModelMismatch, &mut rng).unwrap();
            let split = best_k_split(&s, k).unwrap();
            let hat = oracle_ls(&sys.a_tilde, &sys.y_tilde, &split.support).unwrap();
            let (on, off) = error_decomposition(&s, &hat, &split.support).unwrap();
            let total = (hat.values() - s.values()).norm_squared();
            prop_assert!((on + off - total).abs() <= 1e-12 * total);
        }
    }
}
