use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Method, SignalModel, Study};
use super::seed::trial_seed;
use crate::error::{invalid, Error, Result};
use crate::oracle::oracle_ls;
use crate::pursuits::{recover, PursuitOptions};
use crate::sensing::{gen_gaussian_sensing, make_system, Basis};
use crate::signal::{best_k_split, gen_power_law, gen_sparse};

/// One (trial, method) outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub study: Study,
    pub k: usize,
    pub eps_a: f64,
    pub eps_y: f64,
    pub trial: usize,
    pub seed: u64,
    pub algorithm: Method,
    /// `‖x − x̂‖₂ / ‖x‖₂`, recorded as-is for diverged runs.
    pub rel_error: f64,
    /// Zero for the oracle.
    pub iterations: usize,
    pub diverged: bool,
}

/// Runs every (grid point, trial) of `config` on a pool of `workers`
/// threads. Records come back grid-major, trial-minor, methods in config
/// order, independent of `workers`.
pub fn run_study(config: &ExperimentConfig, workers: usize) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    if workers == 0 {
        return invalid("workers must be at least 1");
    }
    let items: Vec<(usize, f64, f64, usize)> = config
        .grid_points()
        .into_iter()
        .flat_map(|(k, ea, ey)| (0..config.trials).map(move |t| (k, ea, ey, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let nested: Vec<Vec<TrialRecord>> = pool.install(|| {
        items
            .par_iter()
            .map(|&(k, ea, ey, t)| run_trial(config, k, ea, ey, t))
            .collect::<Result<_>>()
    })?;
    Ok(nested.into_iter().flatten().collect())
}

/// A single trial: fresh Φ, s, Δ and e, then every configured method on
/// the same inputs.
pub fn run_trial(config: &ExperimentConfig, k: usize, eps_a: f64, eps_y: f64, trial: usize) -> Result<Vec<TrialRecord>> {
    let seed = trial_seed(config.master_seed, config.study, k, eps_a, eps_y, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = gen_gaussian_sensing(config.m, config.n, &mut rng)?;
    let s = match config.signal {
        SignalModel::Sparse => gen_sparse(config.n, k, &mut rng)?,
        SignalModel::PowerLaw { radius, decay } => gen_power_law(config.n, radius, decay, Some(&mut rng))?,
    };
    let sys = make_system(&phi, &Basis::Identity, &s, eps_y, eps_a, config.scenario, &mut rng)?;
    let (a, y) = (sys.recovery_matrix(), sys.measurements());
    let s_norm = s.norm();

    let mut out = Vec::with_capacity(config.algorithms.len());
    for &method in &config.algorithms {
        let (estimate, iterations, diverged) = match method {
            Method::Pursuit(alg) => {
                let r = recover(alg, a, y, &PursuitOptions::new(alg, k))?;
                (r.estimate, r.iterations, r.diverged)
            }
            Method::Oracle => {
                let support = best_k_split(&s, k)?.support;
                (oracle_ls(a, y, &support)?, 0, false)
            }
        };
        out.push(TrialRecord {
            study: config.study,
            k,
            eps_a,
            eps_y,
            trial,
            seed,
            algorithm: method,
            rel_error: (estimate.values() - s.values()).norm() / s_norm,
            iterations,
            diverged,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pursuits::Algorithm;

    fn tiny(study: Study) -> ExperimentConfig {
        ExperimentConfig {
            m: 40,
            n: 100,
            trials: 3,
            k_values: vec![2, 4],
            eps_a_values: vec![0.0, 0.05],
            eps_y_values: vec![0.02],
            ..ExperimentConfig::preset(study)
        }
    }

    #[test]
    fn noiseless_single_trial() {
        let cfg = ExperimentConfig {
            trials: 1,
            m: 128,
            n: 512,
            k_values: vec![10],
            eps_a_values: vec![0.0],
            eps_y_values: vec![0.0],
            algorithms: vec![Method::Pursuit(Algorithm::Cosamp), Method::Pursuit(Algorithm::Sp)],
            ..ExperimentConfig::preset(Study::SweepK)
        };
        let recs = run_study(&cfg, 1).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs.iter().all(|r| r.rel_error < 1e-6));
    }

    #[test]
    fn order_and_determinism() {
        let cfg = tiny(Study::SweepK);
        let a = run_study(&cfg, 1).unwrap();
        let b = run_study(&cfg, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2 * 2 * 3 * 4);
        let expected: Vec<_> = cfg
            .grid_points()
            .into_iter()
            .flat_map(|(k, ea, ey)| (0..3).flat_map(move |t| Method::ALL.map(|m| (k, ea, ey, t, m))))
            .collect();
        let got: Vec<_> = a.iter().map(|r| (r.k, r.eps_a, r.eps_y, r.trial, r.algorithm)).collect();
        assert_eq!(got, expected);
        assert!(a.iter().all(|r| r.rel_error >= 0.0));
    }

    #[test]
    fn methods_share_inputs() {
        // the trial seed does not depend on which methods run
        let cfg = tiny(Study::SweepK);
        let only_oracle = ExperimentConfig { algorithms: vec![Method::Oracle], ..cfg.clone() };
        let all = run_trial(&cfg, 4, 0.05, 0.02, 1).unwrap();
        let one = run_trial(&only_oracle, 4, 0.05, 0.02, 1).unwrap();
        assert_eq!(all[3], one[0]);
    }

    #[test]
    fn compressible_study_runs() {
        let cfg = ExperimentConfig { m: 40, n: 100, trials: 2, k_values: vec![3, 6], ..ExperimentConfig::preset(Study::CompressibleK) };
        let recs = run_study(&cfg, 2).unwrap();
        assert_eq!(recs.len(), 2 * 2 * 4);
        assert!(recs.iter().all(|r| r.rel_error.is_finite()));
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = ExperimentConfig { trials: 0, ..tiny(Study::SweepK) };
        assert!(run_study(&cfg, 1).is_err());
        assert!(run_study(&tiny(Study::SweepK), 0).is_err());
    }
}
