use super::config::{Method, Study};
use super::runner::TrialRecord;
use crate::error::{invalid, Result};

/// Per (grid point, method) summary over trials.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub study: Study,
    pub k: usize,
    pub eps_a: f64,
    pub eps_y: f64,
    pub algorithm: Method,
    pub trials: usize,
    pub mean: f64,
    pub median: f64,
    /// Population standard deviation (divides by the trial count).
    pub std: f64,
    pub divergence_rate: f64,
    pub mean_iterations: f64,
}

type Key = (usize, u64, u64, Method);

/// Groups records by (K, ε_A, ε_y, method) in order of first appearance and
/// summarizes each group, summing in record order.
pub fn aggregate(records: &[TrialRecord]) -> Result<Vec<Aggregate>> {
    let first = match records.first() {
        Some(r) => r,
        None => return invalid("cannot aggregate an empty record list"),
    };
    let mut order: Vec<Key> = Vec::new();
    let mut groups: std::collections::HashMap<Key, Vec<&TrialRecord>> = Default::default();
    for r in records {
        if r.study != first.study {
            return invalid("records from different studies");
        }
        let key = (r.k, r.eps_a.to_bits(), r.eps_y.to_bits(), r.algorithm);
        groups
            .entry(key)
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r);
    }
    Ok(order
        .into_iter()
        .map(|key| {
            let g = &groups[&key];
            let t = g.len() as f64;
            let mean = g.iter().map(|r| r.rel_error).sum::<f64>() / t;
            let var = g.iter().map(|r| (r.rel_error - mean).powi(2)).sum::<f64>() / t;
            let mut sorted: Vec<f64> = g.iter().map(|r| r.rel_error).collect();
            sorted.sort_by(f64::total_cmp);
            let mid = sorted.len() / 2;
            let median = if sorted.len() % 2 == 1 { sorted[mid] } else { 0.5 * (sorted[mid - 1] + sorted[mid]) };
            Aggregate {
                study: first.study,
                k: key.0,
                eps_a: g[0].eps_a,
                eps_y: g[0].eps_y,
                algorithm: key.3,
                trials: g.len(),
                mean,
                median,
                std: var.sqrt(),
                divergence_rate: g.iter().filter(|r| r.diverged).count() as f64 / t,
                mean_iterations: g.iter().map(|r| r.iterations as f64).sum::<f64>() / t,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pursuits::Algorithm;

    fn rec(trial: usize, err: f64, diverged: bool) -> TrialRecord {
        TrialRecord {
            study: Study::SweepK,
            k: 3,
            eps_a: 0.05,
            eps_y: 0.05,
            trial,
            seed: 11,
            algorithm: Method::Pursuit(Algorithm::Iht),
            rel_error: err,
            iterations: 4,
            diverged,
        }
    }

    #[test]
    fn single_record() {
        let a = aggregate(&[rec(0, 0.25, false)]).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!((a[0].mean, a[0].median, a[0].std, a[0].divergence_rate), (0.25, 0.25, 0.0, 0.0));
    }

    #[test]
    fn two_records() {
        let a = aggregate(&[rec(0, 0.1, false), rec(1, 0.3, true)]).unwrap();
        assert!((a[0].mean - 0.2).abs() < 1e-15);
        assert!((a[0].median - 0.2).abs() < 1e-15);
        assert!((a[0].std - 0.1).abs() < 1e-15);
        assert_eq!(a[0].divergence_rate, 0.5);
        assert_eq!(a[0].mean_iterations, 4.0);
    }

    #[test]
    fn groups_keep_first_appearance_order() {
        let mut b = rec(0, 1.0, false);
        b.algorithm = Method::Oracle;
        let mut c = rec(0, 2.0, false);
        c.k = 1;
        let recs = vec![rec(0, 0.5, false), b.clone(), c, rec(1, 0.7, false), b];
        let a = aggregate(&recs).unwrap();
        let keys: Vec<_> = a.iter().map(|x| (x.k, x.algorithm, x.trials)).collect();
        assert_eq!(
            keys,
            vec![(3, Method::Pursuit(Algorithm::Iht), 2), (3, Method::Oracle, 2), (1, Method::Pursuit(Algorithm::Iht), 1)]
        );
        assert!(aggregate(&[]).is_err());
    }
}
