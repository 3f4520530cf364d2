use crate::error::Result;
use crate::linalg::{mul_on_support, restrict, top_k_support};
use crate::pursuits::{Monitor, PursuitOptions, RecoveryOutput};
use crate::{Matrix, Vector};

/// Consecutive residual increases that count as divergence.
const GROWTH_RUN: usize = 10;

/// Iterative hard thresholding with unit step: `s ← (s + Aᵀ(y − As))_K`.
///
/// The run is flagged as diverged when `‖s‖₂` exceeds
/// `divergence_factor·‖y‖₂ / min_j ‖a_j‖₂` or the residual grows for ten
/// consecutive iterations.
pub fn iht(a: &Matrix, y: &Vector, opts: &PursuitOptions) -> Result<RecoveryOutput> {
    opts.validate(a, y)?;
    let k = opts.k;
    let col_floor = (0..a.ncols())
        .map(|j| a.column(j).norm())
        .fold(f64::INFINITY, f64::min)
        .max(f64::MIN_POSITIVE);
    let size_limit = opts.divergence_factor * y.norm() / col_floor;

    let mut s = Vector::zeros(a.ncols());
    let mut r = y.clone();
    let mut monitor = Monitor::new(opts, y, r.norm());
    let mut iterates = Vec::new();
    if opts.track_iterates {
        iterates.push(s.clone());
    }
    let mut growth = 0usize;
    loop {
        let mut v = a.tr_mul(&r);
        v += &s;
        let mut support = top_k_support(v.as_slice(), k);
        support.retain(|&i| v[i] != 0.0);
        s = restrict(v.as_slice(), &support);
        let prev = r.norm();
        r = y - mul_on_support(a, &s, &support);
        let rn = r.norm();
        if opts.track_iterates {
            iterates.push(s.clone());
        }
        growth = if rn > prev { growth + 1 } else { 0 };
        let stop = monitor.step(rn);
        if s.norm() > size_limit || growth >= GROWTH_RUN || !rn.is_finite() {
            monitor.flag_divergence();
            break;
        }
        if stop {
            break;
        }
    }
    Ok(monitor.finish(s, false, iterates))
}
