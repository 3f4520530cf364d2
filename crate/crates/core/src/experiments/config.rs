//! Study configuration and its flat `key = value` file format.
//!
//! ```text
//! # Fig. 1 at desk scale
//! study = sweep-k
//! m = 512
//! n = 2048
//! trials = 100
//! k_values = 1:25
//! eps_a_values = 0.05
//! eps_y_values = 0.05
//! algorithms = cosamp, sp, iht, oracle
//! ```
//!
//! Lists are comma separated. An item `start:stop` or `start:stop:step`
//! expands to an inclusive range. Every key is optional except `study`;
//! missing keys take the study preset. Unknown keys are errors.

use std::fmt;
use std::path::Path;

use crate::error::{invalid, Error, Result};
use crate::pursuits::Algorithm;
use crate::sensing::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Study {
    SweepK,
    SweepPerturbations,
    SweepEpsAFixedNoise,
    CompressibleK,
}

impl Study {
    pub const ALL: [Study; 4] = [
        Study::SweepK,
        Study::SweepPerturbations,
        Study::SweepEpsAFixedNoise,
        Study::CompressibleK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Study::SweepK => "sweep-k",
            Study::SweepPerturbations => "sweep-perturbations",
            Study::SweepEpsAFixedNoise => "sweep-eps-a-fixed-noise",
            Study::CompressibleK => "compressible-k",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Study::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown study '{s}'")))
    }

    /// Stable small integer mixed into trial seeds.
    pub(crate) fn id(self) -> u64 {
        match self {
            Study::SweepK => 1,
            Study::SweepPerturbations => 2,
            Study::SweepEpsAFixedNoise => 3,
            Study::CompressibleK => 4,
        }
    }
}

impl fmt::Display for Study {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A recovery method compared in the studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Pursuit(Algorithm),
    /// Least squares on the true best-K support.
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Pursuit(Algorithm::Cosamp),
        Method::Pursuit(Algorithm::Sp),
        Method::Pursuit(Algorithm::Iht),
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pursuit(a) => a.name(),
            Method::Oracle => "oracle",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "oracle" {
            return Ok(Method::Oracle);
        }
        Algorithm::parse(s).map(Method::Pursuit)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalModel {
    /// Exactly K-sparse with Gaussian nonzeros, K taken from the grid.
    Sparse,
    /// `|s|_(l) = radius·l^(−decay)`, randomly signed and permuted.
    PowerLaw { radius: f64, decay: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub study: Study,
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub k_values: Vec<usize>,
    pub eps_a_values: Vec<f64>,
    pub eps_y_values: Vec<f64>,
    pub signal: SignalModel,
    pub algorithms: Vec<Method>,
    pub scenario: Scenario,
}

pub const DEFAULT_MASTER_SEED: u64 = 20_190_311;
const SMALL_M: usize = 128;
const SMALL_N: usize = 512;

fn parse_pairs(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
        pairs.push((lineno + 1, key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn apply_pairs(mut cfg: ExperimentConfig, pairs: &[(usize, String, String)]) -> Result<ExperimentConfig> {
    let mut seen = std::collections::HashSet::new();
    for (line, key, value) in pairs {
        if !seen.insert(key.clone()) {
            return Err(Error::Parse(format!("line {line}: duplicate key '{key}'")));
        }
        cfg.set(key, value).map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step).round() as usize + 1;
    (0..count).map(|i| round12(start + i as f64 * step)).collect()
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

impl ExperimentConfig {
    /// Desk-scale preset for a study: 512×2048, 100 trials.
    pub fn preset(study: Study) -> Self {
        let base = ExperimentConfig {
            study,
            m: 512,
            n: 2048,
            trials: 100,
            master_seed: DEFAULT_MASTER_SEED,
            k_values: Vec::new(),
            eps_a_values: vec![0.05],
            eps_y_values: vec![0.05],
            signal: SignalModel::Sparse,
            algorithms: Method::ALL.to_vec(),
            scenario: Scenario::ModelMismatch,
        };
        match study {
            Study::SweepK => ExperimentConfig { k_values: (1..=25).collect(), ..base },
            Study::SweepPerturbations => ExperimentConfig {
                k_values: vec![5, 10, 15],
                eps_a_values: grid(0.0, 0.1, 0.02),
                eps_y_values: grid(0.0, 0.1, 0.02),
                ..base
            },
            Study::SweepEpsAFixedNoise => ExperimentConfig {
                k_values: vec![5, 10, 15],
                eps_a_values: grid(0.0, 0.1, 0.02),
                eps_y_values: vec![0.0],
                ..base
            },
            Study::CompressibleK => {
                let mut k_values: Vec<usize> = (5..=30).collect();
                k_values.extend((32..=50).step_by(2));
                k_values.extend((55..=100).step_by(5));
                ExperimentConfig {
                    k_values,
                    eps_a_values: vec![0.01],
                    eps_y_values: vec![0.01],
                    signal: SignalModel::PowerLaw { radius: 1.0, decay: 2.0 },
                    ..base
                }
            }
        }
    }

    /// 128×512 profile with the K grid scaled by the same factor of four.
    pub fn small(mut self) -> Self {
        let factor = self.n as f64 / SMALL_N as f64;
        if factor > 1.0 {
            let mut ks: Vec<usize> = self
                .k_values
                .iter()
                .map(|&k| ((k as f64 / factor).round() as usize).max(1))
                .collect();
            ks.dedup();
            self.k_values = ks;
        }
        self.m = SMALL_M;
        self.n = SMALL_N;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return invalid("dimensions must be positive");
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if self.k_values.is_empty() || self.eps_a_values.is_empty() || self.eps_y_values.is_empty() {
            return invalid("grids must be nonempty");
        }
        if self.algorithms.is_empty() {
            return invalid("at least one algorithm is required");
        }
        for &k in &self.k_values {
            if k == 0 || k > self.n {
                return invalid(format!("k = {k} outside [1, {}]", self.n));
            }
            if k > self.m && self.algorithms.contains(&Method::Oracle) {
                return invalid(format!("oracle support k = {k} exceeds m = {}", self.m));
            }
        }
        for &e in self.eps_a_values.iter().chain(&self.eps_y_values) {
            if !(0.0..1.0).contains(&e) {
                return invalid(format!("relative perturbation {e} outside [0, 1)"));
            }
        }
        match (self.study, self.signal) {
            (Study::CompressibleK, SignalModel::Sparse) => {
                return invalid("compressible-k requires signal = power-law")
            }
            (Study::CompressibleK, _) | (_, SignalModel::Sparse) => {}
            (study, _) => return invalid(format!("{study} requires signal = sparse")),
        }
        if let SignalModel::PowerLaw { radius, decay } = self.signal {
            if !(radius > 0.0) || !(decay > 1.0) {
                return invalid("power law needs radius > 0 and decay > 1");
            }
        }
        Ok(())
    }

    /// Grid points in run order: K outermost, then ε_A, then ε_y.
    pub fn grid_points(&self) -> Vec<(usize, f64, f64)> {
        let mut out = Vec::new();
        for &k in &self.k_values {
            for &ea in &self.eps_a_values {
                for &ey in &self.eps_y_values {
                    out.push((k, ea, ey));
                }
            }
        }
        out
    }

    /// Parses a config file on top of the preset for the study it names.
    pub fn parse(text: &str) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        let study = pairs
            .iter()
            .find(|(_, k, _)| k == "study")
            .map(|(_, _, v)| Study::parse(v))
            .transpose()?
            .ok_or_else(|| Error::Parse("missing required key 'study'".into()))?;
        apply_pairs(ExperimentConfig::preset(study), &pairs)
    }

    /// Parses a config file on top of `base`. A `study` key, if present,
    /// must name the base study.
    pub fn parse_onto(base: ExperimentConfig, text: &str) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        if let Some((line, _, v)) = pairs.iter().find(|(_, k, _)| k == "study") {
            let named = Study::parse(v)?;
            if named != base.study {
                return Err(Error::Parse(format!("line {line}: config names study '{named}' but '{}' was requested", base.study)));
            }
        }
        apply_pairs(base, &pairs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "study" => {}
            "m" => self.m = parse_num(value)?,
            "n" => self.n = parse_num(value)?,
            "trials" => self.trials = parse_num(value)?,
            "master_seed" => self.master_seed = parse_num(value)?,
            "k_values" => self.k_values = parse_usize_list(value)?,
            "eps_a_values" => self.eps_a_values = parse_f64_list(value)?,
            "eps_y_values" => self.eps_y_values = parse_f64_list(value)?,
            "signal" => {
                self.signal = match value {
                    "sparse" => SignalModel::Sparse,
                    "power-law" => match self.signal {
                        p @ SignalModel::PowerLaw { .. } => p,
                        SignalModel::Sparse => SignalModel::PowerLaw { radius: 1.0, decay: 2.0 },
                    },
                    other => return invalid(format!("unknown signal '{other}'")),
                }
            }
            "radius" | "decay" => {
                let v: f64 = parse_num(value)?;
                let (mut radius, mut decay) = match self.signal {
                    SignalModel::PowerLaw { radius, decay } => (radius, decay),
                    SignalModel::Sparse => (1.0, 2.0),
                };
                if key == "radius" { radius = v } else { decay = v }
                self.signal = SignalModel::PowerLaw { radius, decay };
            }
            "algorithms" => {
                self.algorithms = split_list(value).map(Method::parse).collect::<Result<_>>()?;
            }
            "scenario" => self.scenario = Scenario::parse(value)?,
            other => return invalid(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Renders the config in the file format accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let join_f = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(", ");
        let mut s = String::new();
        s += &format!("study = {}\n", self.study);
        s += &format!("m = {}\nn = {}\ntrials = {}\nmaster_seed = {}\n", self.m, self.n, self.trials, self.master_seed);
        s += &format!(
            "k_values = {}\n",
            self.k_values.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ")
        );
        s += &format!("eps_a_values = {}\n", join_f(&self.eps_a_values));
        s += &format!("eps_y_values = {}\n", join_f(&self.eps_y_values));
        match self.signal {
            SignalModel::Sparse => s += "signal = sparse\n",
            SignalModel::PowerLaw { radius, decay } => {
                s += &format!("signal = power-law\nradius = {radius}\ndecay = {decay}\n")
            }
        }
        s += &format!(
            "algorithms = {}\n",
            self.algorithms.iter().map(|a| a.name()).collect::<Vec<_>>().join(", ")
        );
        s += &format!("scenario = {}\n", self.scenario.name());
        s
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .replace('_', "")
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse '{s}'")))
}

fn parse_usize_list(value: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in split_list(value) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_num(v)?),
            [a, b] | [a, b, _] => {
                let (a, b): (usize, usize) = (parse_num(a)?, parse_num(b)?);
                let step: usize = if parts.len() == 3 { parse_num(parts[2])? } else { 1 };
                if step == 0 || b < a {
                    return invalid(format!("bad range '{item}'"));
                }
                out.extend((a..=b).step_by(step));
            }
            _ => return invalid(format!("bad list item '{item}'")),
        }
    }
    if out.is_empty() {
        return invalid("empty list");
    }
    Ok(out)
}

fn parse_f64_list(value: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in split_list(value) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(parse_num(v)?),
            [a, b, step] => {
                let (a, b, step): (f64, f64, f64) = (parse_num(a)?, parse_num(b)?, parse_num(step)?);
                if !(step > 0.0) || b < a {
                    return invalid(format!("bad range '{item}'"));
                }
                out.extend(grid(a, b, step));
            }
            _ => return invalid(format!("float ranges need start:stop:step, got '{item}'")),
        }
    }
    if out.is_empty() {
        return invalid("empty list");
    }
    if out.iter().any(|x| !x.is_finite()) {
        return invalid("non-finite value");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for study in Study::ALL {
            ExperimentConfig::preset(study).validate().unwrap();
            ExperimentConfig::preset(study).small().validate().unwrap();
            assert_eq!(Study::parse(study.name()).unwrap(), study);
        }
        let p = ExperimentConfig::preset(Study::SweepPerturbations);
        assert_eq!(p.eps_a_values, vec![0.0, 0.02, 0.04, 0.06, 0.08, 0.1]);
    }

    #[test]
    fn small_profile_scales_k() {
        let c = ExperimentConfig::preset(Study::SweepK).small();
        assert_eq!((c.m, c.n), (128, 512));
        assert_eq!(c.k_values.first(), Some(&1));
        assert_eq!(c.k_values.last(), Some(&6));
        let again = c.clone().small();
        assert_eq!(again, c);
    }

    #[test]
    fn parse_overrides_and_ranges() {
        let text = "study = sweep-perturbations\n# comment\nm = 64\nn = 128 # trailing\n\
                    trials = 3\nk_values = 2, 4:8:2\neps_a_values = 0:0.01:0.005\n\
                    eps_y_values = 0.1\nalgorithms = sp, oracle\nscenario = physical-implementation\n";
        let c = ExperimentConfig::parse(text).unwrap();
        assert_eq!((c.m, c.n, c.trials), (64, 128, 3));
        assert_eq!(c.k_values, vec![2, 4, 6, 8]);
        assert_eq!(c.eps_a_values, vec![0.0, 0.005, 0.01]);
        assert_eq!(c.algorithms, vec![Method::Pursuit(Algorithm::Sp), Method::Oracle]);
        assert_eq!(c.scenario, Scenario::PhysicalImplementation);
        assert_eq!(c.master_seed, DEFAULT_MASTER_SEED);
    }

    #[test]
    fn round_trip_text() {
        for study in Study::ALL {
            let c = ExperimentConfig::preset(study);
            assert_eq!(ExperimentConfig::parse(&c.to_text()).unwrap(), c);
        }
    }

    #[test]
    fn rejects_bad_files() {
        for text in [
            "m = 3\n",
            "study = sweep-k\nbogus = 1\n",
            "study = sweep-k\nm = 5\nm = 6\n",
            "study = sweep-k\ntrials = 0\n",
            "study = sweep-k\nk_values = \n",
            "study = sweep-k\nsignal = power-law\n",
            "study = compressible-k\nsignal = sparse\n",
            "study = sweep-k\nradius = 2\n",
            "study = sweep-k\neps_a_values = 1.5\n",
            "study = sweep-k\nalgorithms = omp\n",
            "study = sweep-k\njust a line\n",
            "study = nope\n",
        ] {
            assert!(ExperimentConfig::parse(text).is_err(), "{text:?}");
        }
    }
}
