//! Closed-form recovery guarantees.
//!
//! Constants for the contraction recursion `‖s − s^[l]‖ ≤ C‖s − s^[l−1]‖ + C₁‖e‖`
//! and its limit `‖s − s^[l]‖ ≤ aC^l‖s‖ + D‖e‖` per algorithm, the
//! relative-error bounds under general perturbations, iteration estimates,
//! the oracle least-squares bounds and the decay-ratio formulas for
//! compressible signals.
//!
//! Arguments outside the regime where a bound is defined yield
//! [`Error::OutOfRegime`] rather than a meaningless number.

use crate::error::{invalid, Error, Result};
use crate::pursuits::Algorithm;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub algorithm: Algorithm,
    pub a: f64,
    /// RIP level multiplier: the constants use δ_{bK}.
    pub b: usize,
    /// RIC threshold below which `big_c < 1`.
    pub c: f64,
    pub big_c: f64,
    pub c1: f64,
    pub d: f64,
}

/// Constants evaluated at the RIC of the perturbed matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedBoundConstants {
    pub algorithm: Algorithm,
    pub c_tilde: f64,
    /// Recursion noise factor (`C₁` evaluated at δ̃).
    pub c1_tilde: f64,
    pub d_tilde: f64,
}

pub fn multiplier_a(algorithm: Algorithm) -> f64 {
    match algorithm {
        Algorithm::Cosamp => 1.0,
        Algorithm::Sp => 1.26,
        Algorithm::Iht => 1.0,
    }
}

pub fn level_multiplier(algorithm: Algorithm) -> usize {
    match algorithm {
        Algorithm::Cosamp => 4,
        Algorithm::Sp | Algorithm::Iht => 3,
    }
}

pub fn ric_threshold(algorithm: Algorithm) -> f64 {
    match algorithm {
        Algorithm::Cosamp => 0.171,
        Algorithm::Sp => 0.206,
        Algorithm::Iht => 0.353,
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::OutOfRegime(format!("RIC {delta} outside [0, 1)")));
    }
    Ok(())
}

/// Contraction factor C as a function of δ_{bK}; defined on [0, 1).
pub fn contraction_factor(algorithm: Algorithm, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let d = delta;
    Ok(match algorithm {
        Algorithm::Cosamp => 4.0 * d / (1.0 - d).powi(2),
        Algorithm::Sp => (2.0 * d + 2.0 * d * d) / (1.0 - d).powi(3),
        Algorithm::Iht => 8f64.sqrt() * d,
    })
}

fn noise_factor(algorithm: Algorithm, d: f64) -> f64 {
    match algorithm {
        Algorithm::Cosamp => (6.0 + 2.0 * d) / (1.0 - d).powi(2),
        Algorithm::Sp => 4.0 * (1.0 + d) / (1.0 - d).powi(2),
        Algorithm::Iht => 2.0 * (1.0 + d).sqrt(),
    }
}

fn limit_noise_factor(algorithm: Algorithm, d: f64) -> Result<f64> {
    let (num, den) = match algorithm {
        Algorithm::Cosamp => (6.0 + 2.0 * d, 1.0 - 6.0 * d + d * d),
        Algorithm::Sp => (
            5.0 - 4.0 * d - 8.0 * d * d - d.powi(4),
            1.0 - 6.0 * d + 6.0 * d * d - 2.0 * d.powi(3) + d.powi(4),
        ),
        Algorithm::Iht => (2.0 * (1.0 + d).sqrt(), 1.0 - 8f64.sqrt() * d),
    };
    if den <= 0.0 {
        return Err(Error::OutOfRegime(format!(
            "{} noise factor denominator {den} is nonpositive at RIC {d}",
            algorithm.name()
        )));
    }
    Ok(num / den)
}

/// Constants for the unperturbed matrix at `delta = δ_{bK}`.
pub fn table1_constants(algorithm: Algorithm, delta: f64) -> Result<BoundConstants> {
    let big_c = contraction_factor(algorithm, delta)?;
    let d = limit_noise_factor(algorithm, delta)?;
    Ok(BoundConstants {
        algorithm,
        a: multiplier_a(algorithm),
        b: level_multiplier(algorithm),
        c: ric_threshold(algorithm),
        big_c,
        c1: noise_factor(algorithm, delta),
        d,
    })
}

/// Constants for the perturbed matrix at `delta_tilde = δ̃_{bK}`.
pub fn table2_constants(algorithm: Algorithm, delta_tilde: f64) -> Result<PerturbedBoundConstants> {
    let t = table1_constants(algorithm, delta_tilde)?;
    Ok(PerturbedBoundConstants { algorithm, c_tilde: t.big_c, c1_tilde: t.c1, d_tilde: t.d })
}

/// Iteration index for the per-iteration bounds; `Limit` asks for the
/// asymptotic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iteration {
    Finite(u32),
    Limit,
}

/// Inputs to the general relative-error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    /// Condition number of the sparsity basis.
    pub kappa_psi: f64,
    pub a: f64,
    /// Contraction factor (C̃, or C for the physical-implementation bound).
    pub contraction: f64,
    /// Limit noise factor (D̃, D, or D̂ for the oracle).
    pub noise_factor: f64,
    pub r_k: f64,
    pub s_k: f64,
    /// RIC of the unperturbed matrix at level K.
    pub delta_k: f64,
    pub eps_y: f64,
    pub eps_a_k: f64,
}

impl BoundInputs {
    /// Sparse-signal inputs with `r_K = s_K = 0`.
    pub fn sparse(kappa_psi: f64, a: f64, contraction: f64, noise_factor: f64, delta_k: f64, eps_y: f64, eps_a_k: f64) -> Self {
        Self { kappa_psi, a, contraction, noise_factor, r_k: 0.0, s_k: 0.0, delta_k, eps_y, eps_a_k }
    }

    fn validate(&self) -> Result<()> {
        let nonneg = [
            ("kappa_psi", self.kappa_psi),
            ("a", self.a),
            ("contraction", self.contraction),
            ("noise_factor", self.noise_factor),
            ("r_k", self.r_k),
            ("s_k", self.s_k),
            ("delta_k", self.delta_k),
            ("eps_y", self.eps_y),
            ("eps_a_k", self.eps_a_k),
        ];
        for (name, v) in nonneg {
            if !(v >= 0.0) || !v.is_finite() {
                return invalid(format!("{name} = {v} must be finite and nonnegative"));
            }
        }
        if self.kappa_psi < 1.0 {
            return invalid("condition number must be at least 1");
        }
        Ok(())
    }

    fn perturbation_term(&self) -> f64 {
        self.eps_y + self.eps_a_k + (1.0 + self.eps_y) * (self.r_k + self.s_k)
    }
}

/// Relative error bound for compressible signals under both perturbations.
///
/// Finite l: `κ(aC̃^l + r_K + D̃√(1+δ_K)(ε_y + ε_A^(K) + (1+ε_y)(r_K+s_K)))`.
/// Limit: `κ(D̃√(1+δ_K) + 1)(ε_y + ε_A^(K) + (1+ε_y)(r_K+s_K))`, which needs C̃ < 1.
pub fn theorem2_bound(inputs: &BoundInputs, iteration: Iteration) -> Result<f64> {
    inputs.validate()?;
    let root = (1.0 + inputs.delta_k).sqrt();
    let p = inputs.perturbation_term();
    match iteration {
        Iteration::Finite(l) => Ok(inputs.kappa_psi
            * (inputs.a * inputs.contraction.powi(l as i32) + inputs.r_k + inputs.noise_factor * root * p)),
        Iteration::Limit => {
            if inputs.contraction >= 1.0 {
                return Err(Error::OutOfRegime(format!(
                    "limit bound needs contraction < 1, got {}",
                    inputs.contraction
                )));
            }
            Ok(inputs.kappa_psi * (inputs.noise_factor * root + 1.0) * p)
        }
    }
}

/// Sparse-signal specialization of [`theorem2_bound`].
pub fn theorem3_bound(
    kappa_psi: f64,
    a: f64,
    c_tilde: f64,
    iteration: Iteration,
    d_tilde: f64,
    delta_k: f64,
    eps_y: f64,
    eps_a_k: f64,
) -> Result<f64> {
    theorem2_bound(&BoundInputs::sparse(kappa_psi, a, c_tilde, d_tilde, delta_k, eps_y, eps_a_k), iteration)
}

/// Iterations after which the finite-l bound is within the limit bound:
/// `⌈log_C̃((ε_y + ε_A^(K) + s_K)/a)⌉`.
///
/// Returns 0 when the argument is already at least 1, and 1 when C̃ = 0.
/// Logarithm quotients within 1e-9 of an integer are snapped to it so that
/// exact powers of the base are not rounded up.
pub fn iteration_estimate(c_tilde: f64, a: f64, eps_y: f64, eps_a_k: f64, s_k: f64) -> Result<u32> {
    if !(0.0..1.0).contains(&c_tilde) {
        return Err(Error::OutOfRegime(format!("contraction {c_tilde} outside [0, 1)")));
    }
    if !(a > 0.0) || !(eps_y >= 0.0) || !(eps_a_k >= 0.0) || !(s_k >= 0.0) {
        return invalid("a must be positive and perturbations nonnegative");
    }
    let sum = eps_y + eps_a_k + s_k;
    if sum == 0.0 {
        return Err(Error::OutOfRegime("zero perturbation: the estimate is log of zero".into()));
    }
    let arg = sum / a;
    if arg >= 1.0 {
        return Ok(0);
    }
    if c_tilde == 0.0 {
        return Ok(1);
    }
    let q = arg.ln() / c_tilde.ln();
    let snapped = if (q - q.round()).abs() < 1e-9 { q.round() } else { q.ceil() };
    Ok(snapped as u32)
}

/// Iterations after which `‖s − s^[l]‖ < s_min` in the noiseless case:
/// `⌊log_C(s_min/(a‖s‖))⌋ + 1`. Diagnostic only, since `s_min` is unknown in practice.
pub fn exact_support_iterations(big_c: f64, a: f64, s_min: f64, s_norm: f64) -> Result<u32> {
    if !(big_c > 0.0 && big_c < 1.0) {
        return Err(Error::OutOfRegime(format!("contraction {big_c} outside (0, 1)")));
    }
    if !(s_min > 0.0) || !(s_norm >= s_min) || !(a > 0.0) {
        return invalid("need 0 < s_min <= ‖s‖ and a > 0");
    }
    let q = (s_min / (a * s_norm)).ln() / big_c.ln();
    Ok(q.floor().max(0.0) as u32 + 1)
}

/// Bound for the physical-implementation scenario with unperturbed constants:
/// `κ(aC^l + r_K + D√(1+δ_K)(ε_y + ε_A^(K) + (1+ε_y+ε_A^(K))(r_K+s_K)))`.
pub fn remark3_bound(inputs: &BoundInputs, l: u32) -> Result<f64> {
    inputs.validate()?;
    let root = (1.0 + inputs.delta_k).sqrt();
    let p = inputs.eps_y + inputs.eps_a_k + (1.0 + inputs.eps_y + inputs.eps_a_k) * (inputs.r_k + inputs.s_k);
    Ok(inputs.kappa_psi * (inputs.a * inputs.contraction.powi(l as i32) + inputs.r_k + inputs.noise_factor * root * p))
}

/// `D̂ = 1/√(1 − δ̃_K)`, the bound on `‖Ã_S†‖₂`.
pub fn oracle_d_hat(delta_tilde_k: f64) -> Result<f64> {
    check_delta(delta_tilde_k)?;
    Ok(1.0 / (1.0 - delta_tilde_k).sqrt())
}

/// Oracle least-squares relative error bound:
/// `κ(D̂√(1+δ_K) + 1)(ε_y + ε_A^(K) + (1+ε_y)(r_K+s_K))`.
pub fn oracle_upper_bound(
    kappa_psi: f64,
    delta_k: f64,
    delta_tilde_k: f64,
    eps_y: f64,
    eps_a_k: f64,
    r_k: f64,
    s_k: f64,
) -> Result<f64> {
    let d_hat = oracle_d_hat(delta_tilde_k)?;
    let inputs = BoundInputs { kappa_psi, a: 0.0, contraction: 0.0, noise_factor: d_hat, r_k, s_k, delta_k, eps_y, eps_a_k };
    theorem2_bound(&inputs, Iteration::Limit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayModel {
    StrongDecay,
    PowerLaw,
}

/// `(r_K, s_K)` formulas: upper bounds `p^(−K)` and `√(p+1)/√(K(p−1))·p^(−K)`
/// for strong decay; approximations `K^(1/2−p)` and `√(2p−1)/(p−1)·K^(1/2−p)`
/// for power laws.
pub fn decay_ratio_bounds(model: DecayModel, p: f64, k: usize) -> Result<(f64, f64)> {
    if !(p > 1.0) || !p.is_finite() {
        return invalid(format!("decay parameter p = {p} must exceed 1"));
    }
    if k == 0 {
        return invalid("k must be positive");
    }
    let kf = k as f64;
    Ok(match model {
        DecayModel::StrongDecay => {
            let r = p.powf(-kf);
            (r, (p + 1.0).sqrt() / (kf * (p - 1.0)).sqrt() * r)
        }
        DecayModel::PowerLaw => {
            let r = kf.powf(0.5 - p);
            (r, (2.0 * p - 1.0).sqrt() / (p - 1.0) * r)
        }
    })
}
