use crate::error::Result;
use crate::linalg::{mul_on_support, union_sorted};
use crate::pursuits::{ls_on_support, thresholded_support, Monitor, PursuitOptions, RecoveryOutput};
use crate::{Matrix, Vector};

/// Subspace pursuit.
///
/// Starts from the least-squares fit on the K strongest correlations. Each
/// iteration adds K candidates from the residual correlation, keeps the K
/// largest least-squares coefficients over the 2K-set and refits on them,
/// which leaves the residual orthogonal to the selected columns.
pub fn sp(a: &Matrix, y: &Vector, opts: &PursuitOptions) -> Result<RecoveryOutput> {
    opts.validate(a, y)?;
    let k = opts.k;
    let mut rank_deficient = false;

    let u = a.tr_mul(y);
    let mut support = thresholded_support(&u, k);
    let ls = ls_on_support(a, y, &support)?;
    rank_deficient |= ls.rank_deficient;
    let mut s = ls.x;
    let mut yr = y - mul_on_support(a, &s, &support);

    let mut monitor = Monitor::new(opts, y, yr.norm());
    let mut iterates = Vec::new();
    if opts.track_iterates {
        iterates.push(s.clone());
    }
    loop {
        let u = a.tr_mul(&yr);
        let omega = thresholded_support(&u, k);
        let merged = union_sorted(&omega, &support);
        let probe = ls_on_support(a, y, &merged)?;
        rank_deficient |= probe.rank_deficient;
        support = thresholded_support(&probe.x, k);
        let refit = ls_on_support(a, y, &support)?;
        rank_deficient |= refit.rank_deficient;
        s = refit.x;
        yr = y - mul_on_support(a, &s, &support);
        if opts.track_iterates {
            iterates.push(s.clone());
        }
        if monitor.step(yr.norm()) {
            break;
        }
    }
    Ok(monitor.finish(s, rank_deficient, iterates))
}
