//! Monte Carlo estimates of `tau_0((B B*)^k)` for products
//! `B = X_1 X_2 ... X_p` of independent rectangular Gaussian matrices.
//!
//! `X_j` is `N_{j-1} x N_j` with centred entries of variance `1/n` and
//! `N_j = round(d_j n)`. As `n` grows the normalized trace moments approach
//! the polynomials `P_k(d_0, ..., d_p)` from [`fuss_narayana::closed_form_pk`].
//!
//! Trial `r` draws from a ChaCha8 generator seeded with the experiment seed
//! and switched to stream `r`, so a result depends only on the configuration.

mod matrix;
mod stats;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use fuss_narayana::scalar::round_significant;
use fuss_narayana::MultiPoly;

pub use matrix::{trace_moments, trace_moments_both, CMatrix};
pub use stats::{mean_and_se, pairwise_sum};

/// Largest realized dimension accepted by [`DimensionProfile::new`].
pub const MAX_DIMENSION: usize = 1 << 14;

/// Significant digits used for every float in JSON and CSV output.
pub const OUTPUT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("realized dimension {dim} exceeds the limit {limit}")]
    DimensionOverflow { dim: f64, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Real,
    #[default]
    Complex,
}

impl std::str::FromStr for Ensemble {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Self::Real),
            "complex" => Ok(Self::Complex),
            other => Err(Error::InvalidConfig(format!("unknown ensemble {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionProfile {
    d: Vec<f64>,
    n: usize,
    realized: Vec<usize>,
}

impl DimensionProfile {
    pub fn new(d: Vec<f64>, n: usize) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least two dimensions d_0, d_1, got {}",
                d.len()
            )));
        }
        if let Some(bad) = d.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::InvalidConfig(format!(
                "dimensions must be positive, got {bad}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidConfig("scale n must be >= 1".into()));
        }
        let realized = d
            .iter()
            .map(|&dj| {
                let x = (dj * n as f64 + 0.5).floor();
                if x > MAX_DIMENSION as f64 {
                    Err(Error::DimensionOverflow {
                        dim: x,
                        limit: MAX_DIMENSION,
                    })
                } else {
                    Ok((x as usize).max(1))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { d, n, realized })
    }

    pub fn p(&self) -> usize {
        self.d.len() - 1
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn realized(&self) -> &[usize] {
        &self.realized
    }

    /// `N_j / n`.
    pub fn realized_ratios(&self) -> Vec<f64> {
        self.realized
            .iter()
            .map(|&m| m as f64 / self.n as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McConfig {
    pub profile: DimensionProfile,
    pub k_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub ensemble: Ensemble,
}

impl McConfig {
    pub fn new(profile: DimensionProfile, k_max: usize, trials: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            profile,
            k_max,
            trials,
            seed,
            ensemble: Ensemble::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_ensemble(mut self, ensemble: Ensemble) -> Self {
        self.ensemble = ensemble;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 {
            return Err(Error::InvalidConfig("k_max must be >= 1".into()));
        }
        if self.trials < 2 {
            return Err(Error::InvalidConfig(
                "need at least 2 trials for a standard error".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub k: usize,
    pub mean: f64,
    pub se: f64,
    /// `P_k(d)` at the asymptotic dimensions.
    pub target: f64,
    pub z: f64,
    /// `P_k(N_0/n, ..., N_p/n)`; for `k = 1` this is the exact finite-n expectation.
    pub target_realized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Largest relative gap between the `B B*` and `B* B` routes over all trials and orders.
    pub trace_identity_max_rel_err: f64,
    pub rng: &'static str,
    pub entry_variance: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McResult {
    pub config: McConfig,
    pub moments: Vec<MomentEstimate>,
    pub diagnostics: Diagnostics,
}

impl McResult {
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("result serializes");
        round_floats(&mut v);
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,mean,se,target,z\n");
        for m in &self.moments {
            let f = |x: f64| fmt_float(x);
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                m.k,
                f(m.mean),
                f(m.se),
                f(m.target),
                f(m.z)
            );
        }
        out
    }

    pub fn moment(&self, k: usize) -> Option<&MomentEstimate> {
        self.moments.iter().find(|m| m.k == k)
    }
}

fn fmt_float(x: f64) -> String {
    serde_json::to_string(&round_significant(x, OUTPUT_DIGITS)).unwrap_or_else(|_| "null".into())
}

fn round_floats(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(num) if num.is_f64() => {
            let x = round_significant(num.as_f64().unwrap_or(f64::NAN), OUTPUT_DIGITS);
            if let Some(r) = serde_json::Number::from_f64(x) {
                *num = r;
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_floats),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Generator for trial `trial` of an experiment seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn sample_product(
    profile: &DimensionProfile,
    ensemble: Ensemble,
    rng: &mut ChaCha8Rng,
) -> CMatrix {
    let dims = profile.realized();
    let sd = (1.0 / profile.n() as f64).sqrt();
    let mut b = CMatrix::gaussian(dims[0], dims[1], sd, ensemble, rng);
    for w in dims[1..].windows(2) {
        let x = CMatrix::gaussian(w[0], w[1], sd, ensemble, rng);
        b = b.mul(&x);
    }
    b
}

/// `P_k` evaluated in floating point, `k = 1..=k_max`.
pub fn limit_moments(p: usize, k_max: usize, point: &[f64]) -> Vec<f64> {
    (1..=k_max)
        .map(|k| {
            let poly: MultiPoly = fuss_narayana::closed_form_pk(p, k);
            poly.eval_f64(point).expect("arity matches")
        })
        .collect()
}

pub fn run_experiment(config: &McConfig) -> Result<McResult> {
    config.validate()?;
    let profile = &config.profile;
    let k_max = config.k_max;
    let n0 = profile.realized()[0] as f64;

    let per_trial: Vec<(Vec<f64>, f64)> = (0..config.trials as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = trial_rng(config.seed, r);
            let b = sample_product(profile, config.ensemble, &mut rng);
            let (left, right) = trace_moments_both(&b, k_max);
            let gap = left
                .iter()
                .zip(&right)
                .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE))
                .fold(0.0, f64::max);
            let moments = left.iter().map(|t| t / n0).collect();
            (moments, gap)
        })
        .collect();

    let targets = limit_moments(profile.p(), k_max, profile.d());
    let realized_targets = limit_moments(profile.p(), k_max, &profile.realized_ratios());
    let moments = (0..k_max)
        .map(|i| {
            let samples: Vec<f64> = per_trial.iter().map(|(m, _)| m[i]).collect();
            let (mean, se) = mean_and_se(&samples);
            let target = targets[i];
            let z = if se > 0.0 {
                (mean - target) / se
            } else if mean == target {
                0.0
            } else {
                f64::INFINITY
            };
            MomentEstimate {
                k: i + 1,
                mean,
                se,
                target,
                z,
                target_realized: realized_targets[i],
            }
        })
        .collect();
    let trace_identity_max_rel_err = per_trial.iter().map(|(_, g)| *g).fold(0.0, f64::max);

    Ok(McResult {
        config: config.clone(),
        moments,
        diagnostics: Diagnostics {
            trace_identity_max_rel_err,
            rng: "ChaCha8 seeded from the 64-bit seed, stream = trial index",
            entry_variance: "1/n",
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub n: usize,
    /// `|mean - P_k(d)|` for `k = 1..=k_max`.
    pub deviations: Vec<f64>,
    pub standard_errors: Vec<f64>,
}

/// Repeats the experiment at several scales with the same seed family.
pub fn scaling_study(
    d: &[f64],
    ns: &[usize],
    k_max: usize,
    trials: usize,
    seed: u64,
    ensemble: Ensemble,
) -> Result<Vec<ScalingPoint>> {
    ns.iter()
        .map(|&n| {
            let cfg = McConfig::new(DimensionProfile::new(d.to_vec(), n)?, k_max, trials, seed)?
                .with_ensemble(ensemble);
            let res = run_experiment(&cfg)?;
            Ok(ScalingPoint {
                n,
                deviations: res
                    .moments
                    .iter()
                    .map(|m| (m.mean - m.target).abs())
                    .collect(),
                standard_errors: res.moments.iter().map(|m| m.se).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realized_dimensions_round_half_up_with_floor() {
        let prof = DimensionProfile::new(vec![1.0, 1.5, 0.5, 0.001], 3).unwrap();
        assert_eq!(prof.realized(), &[3, 5, 2, 1]);
        assert_eq!(prof.p(), 3);
        for (m, d) in prof.realized().iter().zip(prof.d()) {
            assert!((*m as f64 - d * 3.0).abs() <= 0.5 || *m == 1);
        }
    }

    #[test]
    fn profile_validation() {
        assert!(DimensionProfile::new(vec![1.0], 10).is_err());
        assert!(DimensionProfile::new(vec![1.0, -1.0], 10).is_err());
        assert!(DimensionProfile::new(vec![1.0, f64::NAN], 10).is_err());
        assert!(DimensionProfile::new(vec![1.0, 1.0], 0).is_err());
        assert!(matches!(
            DimensionProfile::new(vec![1.0, 1e9], 10),
            Err(Error::DimensionOverflow { .. })
        ));
    }

    #[test]
    fn config_needs_two_trials() {
        let prof = DimensionProfile::new(vec![1.0, 1.0], 4).unwrap();
        assert!(McConfig::new(prof.clone(), 2, 1, 0).is_err());
        assert!(McConfig::new(prof.clone(), 0, 5, 0).is_err());
        assert!(McConfig::new(prof, 2, 2, 0).is_ok());
    }

    #[test]
    fn product_shape() {
        let prof = DimensionProfile::new(vec![1.0, 2.0, 0.5], 4).unwrap();
        let b = sample_product(&prof, Ensemble::Real, &mut trial_rng(3, 0));
        assert_eq!((b.nrows(), b.ncols()), (4, 2));
        assert!(b.im.is_none());
        let c = sample_product(&prof, Ensemble::Complex, &mut trial_rng(3, 0));
        assert!(c.im.is_some());
    }

    #[test]
    fn streams_differ_by_trial() {
        let prof = DimensionProfile::new(vec![1.0, 1.0], 3).unwrap();
        let a = sample_product(&prof, Ensemble::Real, &mut trial_rng(5, 0));
        let b = sample_product(&prof, Ensemble::Real, &mut trial_rng(5, 1));
        let a2 = sample_product(&prof, Ensemble::Real, &mut trial_rng(5, 0));
        assert_ne!(a.re, b.re);
        assert_eq!(a.re, a2.re);
    }

    #[test]
    fn degenerate_scale_runs() {
        let cfg =
            McConfig::new(DimensionProfile::new(vec![1.0, 1.0], 1).unwrap(), 3, 4, 0).unwrap();
        let res = run_experiment(&cfg).unwrap();
        assert_eq!(res.moments.len(), 3);
        assert!(res.moments.iter().all(|m| m.mean.is_finite()));
    }

    #[test]
    fn limit_moments_at_unit_dimensions_are_catalan() {
        assert_eq!(limit_moments(1, 4, &[1.0, 1.0]), vec![1.0, 2.0, 5.0, 14.0]);
    }

    #[test]
    fn json_shape() {
        let cfg =
            McConfig::new(DimensionProfile::new(vec![1.0, 1.0], 8).unwrap(), 2, 3, 11).unwrap();
        let res = run_experiment(&cfg).unwrap();
        let v: serde_json::Value = serde_json::from_str(&res.to_json()).unwrap();
        assert_eq!(v["config"]["seed"], 11);
        assert_eq!(v["config"]["ensemble"], "complex");
        assert_eq!(v["moments"].as_array().unwrap().len(), 2);
        for key in ["k", "mean", "se", "target", "z"] {
            assert!(v["moments"][0].get(key).is_some(), "{key}");
        }
        let csv = res.to_csv();
        assert!(csv.starts_with("k,mean,se,target,z\n1,"));
        assert_eq!(csv.lines().count(), 3);
    }
}
