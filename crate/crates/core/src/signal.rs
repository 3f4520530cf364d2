//! Test signal classes and best-K approximation.
//!
//! Three generators are provided: exactly K-sparse Gaussian signals,
//! power-law compressible signals `|s|_(l) = R·l^(-p)` and strong-decay
//! signals `|s|_(l) = scale·p^(-l)`. [`best_k_split`] and
//! [`approx_ratios`] quantify how well a signal is approximated by its K
//! largest entries.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};
use crate::linalg::{l1_norm, restrict, top_k_support};
use crate::Vector;

/// Dense real signal. Entries are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    values: Vector,
}

impl Signal {
    pub fn new(values: Vector) -> Result<Self> {
        if values.is_empty() {
            return invalid("signal must have positive dimension");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return invalid("signal entries must be finite");
        }
        Ok(Self { values })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(Vector::from_column_slice(values))
    }

    pub(crate) fn from_vector_unchecked(values: Vector) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: Vector::zeros(n) }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &Vector {
        &self.values
    }

    pub fn into_values(self) -> Vector {
        self.values
    }

    pub fn as_slice(&self) -> &[f64] {
        self.values.as_slice()
    }

    pub fn norm(&self) -> f64 {
        self.values.norm()
    }

    pub fn l1_norm(&self) -> f64 {
        l1_norm(&self.values)
    }

    /// Indices of nonzero entries in ascending order.
    pub fn support(&self) -> Vec<usize> {
        crate::linalg::nonzero_support(&self.values)
    }

    pub fn nnz(&self) -> usize {
        self.values.iter().filter(|v| **v != 0.0).count()
    }

    pub fn scaled(&self, c: f64) -> Signal {
        Signal { values: &self.values * c }
    }
}

/// Best K-term approximation `head` and the residual `tail = s - head`.
#[derive(Debug, Clone, PartialEq)]
pub struct BestKSplit {
    pub head: Signal,
    pub tail: Signal,
    pub k: usize,
    /// Support of `head` (the K kept indices, ascending).
    pub support: Vec<usize>,
}

/// Approximation-error ratios `r_K = ‖tail‖₂/‖s‖₂` and `s_K = ‖tail‖₁/(√K‖s‖₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxRatios {
    pub r_k: f64,
    pub s_k: f64,
}

fn check_sparsity(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return invalid(format!("sparsity k = {k} must satisfy 1 <= k <= n = {n}"));
    }
    Ok(())
}

/// Exactly `k`-sparse signal with a uniformly random support and
/// i.i.d. standard normal nonzero values.
pub fn gen_sparse<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Signal> {
    check_sparsity(n, k)?;
    let support = index::sample(rng, n, k);
    let mut values = Vector::zeros(n);
    for i in support.iter() {
        let mut v: f64 = rng.sample(StandardNormal);
        // a zero draw would silently reduce the sparsity
        while v == 0.0 {
            v = rng.sample(StandardNormal);
        }
        values[i] = v;
    }
    Ok(Signal { values })
}

/// Power-law signal whose l-th largest magnitude is `radius·l^(-p)`.
///
/// Without an rng the entries are positive and sorted by position. With an
/// rng, signs are random and positions are permuted uniformly.
pub fn gen_power_law<R: Rng + ?Sized>(
    n: usize,
    radius: f64,
    p: f64,
    rng: Option<&mut R>,
) -> Result<Signal> {
    if n == 0 {
        return invalid("dimension must be positive");
    }
    if !(p > 1.0) || !p.is_finite() {
        return invalid(format!("power-law exponent p = {p} must exceed 1"));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return invalid(format!("radius = {radius} must be positive"));
    }
    let mut mags: Vec<f64> = (1..=n).map(|l| radius * (l as f64).powf(-p)).collect();
    if let Some(rng) = rng {
        for m in mags.iter_mut() {
            if rng.random::<bool>() {
                *m = -*m;
            }
        }
        mags.shuffle(rng);
    }
    Signal::new(Vector::from_vec(mags))
}

/// Strong-decay signal with exact geometric magnitudes `scale·p^(-l)`, l = 1..n.
pub fn gen_strong_decay(n: usize, p: f64, scale: f64) -> Result<Signal> {
    if n == 0 {
        return invalid("dimension must be positive");
    }
    if !(p > 1.0) || !p.is_finite() {
        return invalid(format!("decay factor p = {p} must exceed 1"));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return invalid(format!("scale = {scale} must be positive"));
    }
    let values = Vector::from_iterator(n, (1..=n).map(|l| scale * p.powi(-(l as i32))));
    Signal::new(values)
}

/// Splits `s` into its best `k`-term approximation and the remainder.
/// Among equal magnitudes the lowest index is kept.
pub fn best_k_split(s: &Signal, k: usize) -> Result<BestKSplit> {
    check_sparsity(s.n(), k)?;
    let support = top_k_support(s.as_slice(), k);
    let head = restrict(s.as_slice(), &support);
    let tail = &s.values - &head;
    Ok(BestKSplit {
        head: Signal { values: head },
        tail: Signal { values: tail },
        k,
        support,
    })
}

pub fn approx_ratios(s: &Signal, k: usize) -> Result<ApproxRatios> {
    let norm = s.norm();
    if norm == 0.0 {
        return invalid("approximation ratios are undefined for the zero signal");
    }
    let split = best_k_split(s, k)?;
    Ok(ApproxRatios {
        r_k: split.tail.norm() / norm,
        s_k: split.tail.l1_norm() / ((k as f64).sqrt() * norm),
    })
}
