use crate::error::Result;
use crate::linalg::{mul_on_support, nonzero_support, union_sorted};
use crate::pursuits::{ls_on_support, thresholded_support, Monitor, PursuitOptions, RecoveryOutput};
use crate::linalg::restrict;
use crate::{Matrix, Vector};

/// Compressive sampling matching pursuit.
///
/// Each iteration correlates the residual with A, merges the 2K strongest
/// indices with the current support, solves least squares on the merged set
/// (at most 3K columns), prunes to the K largest coefficients and updates the
/// residual from the pruned estimate.
pub fn cosamp(a: &Matrix, y: &Vector, opts: &PursuitOptions) -> Result<RecoveryOutput> {
    opts.validate(a, y)?;
    let k = opts.k;
    let mut s = Vector::zeros(a.ncols());
    let mut r = y.clone();
    let mut monitor = Monitor::new(opts, y, r.norm());
    let mut iterates = Vec::new();
    if opts.track_iterates {
        iterates.push(s.clone());
    }
    let mut rank_deficient = false;
    loop {
        let u = a.tr_mul(&r);
        let omega = thresholded_support(&u, 2 * k);
        let merged = union_sorted(&omega, &nonzero_support(&s));
        let ls = ls_on_support(a, y, &merged)?;
        rank_deficient |= ls.rank_deficient;
        let kept = thresholded_support(&ls.x, k);
        s = restrict(ls.x.as_slice(), &kept);
        r = y - mul_on_support(a, &s, &kept);
        if opts.track_iterates {
            iterates.push(s.clone());
        }
        if monitor.step(r.norm()) {
            break;
        }
    }
    Ok(monitor.finish(s, rank_deficient, iterates))
}
