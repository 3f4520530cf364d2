//! Sensing matrices and perturbed measurement systems.
//!
//! Two sensing processes are supported. In the model-mismatch scenario the
//! measurements are `ỹ = Φx + e` while the recovery only knows the
//! perturbed model `Φ̃ = Φ + Δ`. In the physical-implementation scenario the
//! hardware realizes `Φ + Δ`, so `ỹ = (Φ + Δ)x + e`, but the recovery uses
//! the nominal `Φ`.

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::{invalid, Result};
use crate::matrix_analysis::{spectral_norm, DEFAULT_SPECTRAL_TOL};
use crate::signal::{BestKSplit, Signal};
use crate::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// `ỹ = Φx + e`, recovery sees `(Ã, ỹ)`.
    ModelMismatch,
    /// `ỹ = (Φ + Δ)x + e`, recovery sees `(A, ỹ)`.
    PhysicalImplementation,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::ModelMismatch => "model-mismatch",
            Scenario::PhysicalImplementation => "physical-implementation",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "model-mismatch" => Ok(Scenario::ModelMismatch),
            "physical-implementation" => Ok(Scenario::PhysicalImplementation),
            other => invalid(format!("unknown scenario '{other}'")),
        }
    }
}

/// Sparsity basis Ψ.
#[derive(Debug, Clone, PartialEq)]
pub enum Basis {
    Identity,
    Matrix(Matrix),
}

impl Basis {
    fn apply(&self, s: &Vector) -> Vector {
        match self {
            Basis::Identity => s.clone(),
            Basis::Matrix(psi) => psi * s,
        }
    }

    fn right_mul(&self, m: &Matrix) -> Matrix {
        match self {
            Basis::Identity => m.clone(),
            Basis::Matrix(psi) => m * psi,
        }
    }
}

/// Everything one recovery run needs, plus the ground truth.
#[derive(Debug, Clone)]
pub struct PerturbedSystem {
    /// Unperturbed `A = ΦΨ`.
    pub a: Matrix,
    /// `E = ΔΨ`.
    pub e_mat: Matrix,
    /// `Ã = A + E`.
    pub a_tilde: Matrix,
    /// Noiseless output of the sensing process that actually ran.
    pub y: Vector,
    pub e_vec: Vector,
    /// `ỹ = y + e`.
    pub y_tilde: Vector,
    pub eps_y: f64,
    /// Requested `‖Δ‖₂/‖Φ‖₂`.
    pub eps_phi: f64,
    /// `‖E‖₂/‖A‖₂`; equal to `eps_phi` when Ψ is the identity.
    pub eps_a: f64,
    pub scenario: Scenario,
    /// Coefficient vector `s` with `x = Ψs`.
    pub s: Signal,
}

impl PerturbedSystem {
    /// Matrix handed to the recovery algorithm for this scenario.
    pub fn recovery_matrix(&self) -> &Matrix {
        match self.scenario {
            Scenario::ModelMismatch => &self.a_tilde,
            Scenario::PhysicalImplementation => &self.a,
        }
    }

    pub fn measurements(&self) -> &Vector {
        &self.y_tilde
    }

    /// Error term `ẽ` such that `ỹ = M s_K + ẽ` with `M` the recovery matrix.
    ///
    /// Model mismatch: `ẽ = e − E s_K + A s_K^c`.
    /// Physical implementation: `ẽ = e + E s_K + Ã s_K^c`.
    pub fn effective_noise(&self, split: &BestKSplit) -> Vector {
        let head = split.head.values();
        let tail = split.tail.values();
        match self.scenario {
            Scenario::ModelMismatch => &self.e_vec - &self.e_mat * head + &self.a * tail,
            Scenario::PhysicalImplementation => &self.e_vec + &self.e_mat * head + &self.a_tilde * tail,
        }
    }
}

/// i.i.d. `N(0, 1/m)` entries so each column has unit expected squared norm.
pub fn gen_gaussian_sensing<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<Matrix> {
    if m == 0 || n == 0 {
        return invalid("sensing matrix dimensions must be positive");
    }
    let dist = Normal::new(0.0, 1.0 / (m as f64).sqrt()).expect("positive std");
    Ok(Matrix::from_fn(m, n, |_, _| dist.sample(rng)))
}

fn gaussian_matrix<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(m, n, |_, _| rng.sample(StandardNormal))
}

fn gaussian_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vector {
    Vector::from_fn(m, |_, _| rng.sample(StandardNormal))
}

/// Builds a perturbed sensing instance.
///
/// Δ and e are isotropic Gaussian draws rescaled so that
/// `‖Δ‖₂ = eps_phi·‖Φ‖₂` and `‖e‖₂ = eps_y·‖y‖₂` hold exactly. Both draws
/// always consume the rng, even at zero magnitude, so the stream layout does
/// not depend on the perturbation sizes.
pub fn make_system<R: Rng + ?Sized>(
    phi: &Matrix,
    psi: &Basis,
    s: &Signal,
    eps_y: f64,
    eps_phi: f64,
    scenario: Scenario,
    rng: &mut R,
) -> Result<PerturbedSystem> {
    let (m, n) = phi.shape();
    if !(0.0..1.0).contains(&eps_y) || !(0.0..1.0).contains(&eps_phi) {
        return invalid(format!("relative perturbations must lie in [0, 1): eps_y = {eps_y}, eps_phi = {eps_phi}"));
    }
    if s.n() != n {
        return invalid(format!("signal length {} does not match {n} columns", s.n()));
    }
    if let Basis::Matrix(p) = psi {
        if p.shape() != (n, n) {
            return invalid("basis must be square with side N");
        }
    }

    let a = psi.right_mul(phi);
    let x = psi.apply(s.values());

    let raw_delta = gaussian_matrix(m, n, rng);
    let delta = if eps_phi > 0.0 {
        let phi_norm = spectral_norm(phi, DEFAULT_SPECTRAL_TOL)?;
        let raw_norm = spectral_norm(&raw_delta, DEFAULT_SPECTRAL_TOL)?;
        raw_delta * (eps_phi * phi_norm / raw_norm)
    } else {
        Matrix::zeros(m, n)
    };
    let e_mat = psi.right_mul(&delta);
    let a_tilde = &a + &e_mat;

    let y = match scenario {
        Scenario::ModelMismatch => phi * &x,
        Scenario::PhysicalImplementation => (phi + &delta) * &x,
    };
    let y_norm = y.norm();
    if y_norm == 0.0 && eps_y > 0.0 {
        return invalid("relative measurement noise is undefined for zero measurements");
    }
    let raw_e = gaussian_vector(m, rng);
    let e_vec = if eps_y > 0.0 {
        let raw_norm = raw_e.norm();
        raw_e * (eps_y * y_norm / raw_norm)
    } else {
        Vector::zeros(m)
    };
    let y_tilde = &y + &e_vec;

    let eps_a = match psi {
        Basis::Identity => eps_phi,
        Basis::Matrix(_) if eps_phi == 0.0 => 0.0,
        Basis::Matrix(_) => {
            spectral_norm(&e_mat, DEFAULT_SPECTRAL_TOL)? / spectral_norm(&a, DEFAULT_SPECTRAL_TOL)?
        }
    };

    Ok(PerturbedSystem {
        a,
        e_mat,
        a_tilde,
        y,
        e_vec,
        y_tilde,
        eps_y,
        eps_phi,
        eps_a,
        scenario,
        s: s.clone(),
    })
}
