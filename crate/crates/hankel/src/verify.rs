//! Monte-Carlo checks of the lemmas and the proved bounds.
//!
//! Samples are drawn in fixed chunks, each from its own ChaCha stream, so
//! the outcome depends only on the seed and not on the thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hankel_core::bounds::bound_for;
use hankel_core::classes::HankelEvaluator;
use hankel_core::lemmas::{
    carlson_slack, classify_region_exact, pipeline_pairs, psi_eval, sample_one,
};
use hankel_core::scalar::to_f64;
use hankel_core::{ClassId, Complex64};

use crate::format::rational;

pub const CHUNK: u64 = 8192;
const LEMMA_STREAM: u64 = 0;
const MAX_OFFENDERS: usize = 10;

fn class_stream(i: usize) -> u64 {
    (i as u64 + 1) << 40
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: u64,
    pub seed: u64,
    pub lemma_tol: f64,
    pub carlson_tol: f64,
}

impl VerifyConfig {
    pub const DEFAULT_SAMPLES: u64 = 100_000;
    pub const DEFAULT_LEMMA_TOL: f64 = 1e-9;
    pub const DEFAULT_CARLSON_TOL: f64 = 1e-12;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Offender {
    pub sample: u64,
    pub check: String,
    pub value: f64,
    pub limit: f64,
    pub c: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteResult {
    pub name: String,
    pub samples: u64,
    pub checks: u64,
    pub violations: u64,
    /// Largest `value − limit` seen; negative when every check held.
    pub worst_margin: f64,
    pub offenders: Vec<Offender>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    violations: u64,
    worst: f64,
    offenders: Vec<Offender>,
}

impl Tally {
    fn new() -> Self {
        Self { worst: f64::NEG_INFINITY, ..Default::default() }
    }

    fn record(&mut self, sample: u64, check: &str, value: f64, limit: f64, tol: f64, c: &[Complex64; 4]) {
        self.checks += 1;
        let margin = value - limit;
        if margin > self.worst {
            self.worst = margin;
        }
        if value.is_nan() || value > limit + tol {
            self.violations += 1;
            if self.offenders.len() < MAX_OFFENDERS {
                self.offenders.push(Offender {
                    sample,
                    check: check.into(),
                    value,
                    limit,
                    c: c.iter().map(|z| [z.re, z.im]).collect(),
                });
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.violations += other.violations;
        self.worst = self.worst.max(other.worst);
        let room = MAX_OFFENDERS - self.offenders.len();
        self.offenders.extend(other.offenders.into_iter().take(room));
        self
    }

    fn finish(self, name: String, samples: u64) -> SuiteResult {
        SuiteResult {
            name,
            samples,
            checks: self.checks,
            violations: self.violations,
            worst_margin: self.worst,
            offenders: self.offenders,
        }
    }
}

/// Runs `body` over `samples` Schwarz samples split into [`CHUNK`]-sized
/// streams starting at `base`, merging in chunk order.
fn sweep<F>(samples: u64, seed: u64, base: u64, body: F) -> Tally
where
    F: Fn(&mut Tally, u64, &[Complex64; 4]) + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let tallies: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(base + k);
            let start = k * CHUNK;
            let end = (start + CHUNK).min(samples);
            let mut t = Tally::new();
            for i in start..end {
                let s = sample_one(&mut rng);
                body(&mut t, i, &s.c);
            }
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::new(), Tally::merge)
}

/// Carlson's inequalities and `Ψ(μ, ν) ≤ Φ(μ, ν)` at every pair the bound
/// pipelines invoke.
pub fn lemma_suite(cfg: &VerifyConfig) -> SuiteResult {
    let pairs: Vec<(f64, f64, f64, String)> = pipeline_pairs()
        .iter()
        .filter_map(|(mu, nu)| {
            let phi = classify_region_exact(mu, nu).phi?;
            Some((to_f64(mu), to_f64(nu), phi, format!("psi({}, {})", rational(mu), rational(nu))))
        })
        .collect();
    let tally = sweep(cfg.samples, cfg.seed, LEMMA_STREAM, |t, i, c| {
        let slack = carlson_slack(c);
        for (k, s) in slack.iter().enumerate() {
            // Slack is `limit − value`.
            t.record(i, ["carlson |c2|", "carlson |c3|", "carlson |c4|"][k], -s, 0.0, cfg.carlson_tol, c);
        }
        for (mu, nu, phi, name) in &pairs {
            t.record(i, name, psi_eval(c, *mu, *nu), *phi, cfg.lemma_tol, c);
        }
    });
    tally.finish("lemmas".into(), cfg.samples)
}

/// `|H₃(1)| ≤ bound` for one class, with no tolerance.
pub fn bound_suite(class: ClassId, cfg: &VerifyConfig) -> hankel_core::Result<SuiteResult> {
    let bound = bound_for(class)?.upper_bound;
    let eval = HankelEvaluator::new(class)?;
    let idx = ClassId::ALL.iter().position(|&c| c == class).expect("listed class");
    let tally = sweep(cfg.samples, cfg.seed, class_stream(idx), |t, i, c| {
        t.record(i, "|H3(1)| <= bound", eval.eval(c).norm(), bound, 0.0, c);
    });
    Ok(tally.finish(format!("bound {}", class.name()), cfg.samples))
}

pub fn run_all(cfg: &VerifyConfig) -> hankel_core::Result<Vec<SuiteResult>> {
    let mut out = vec![lemma_suite(cfg)];
    for class in ClassId::ALL {
        out.push(bound_suite(class, cfg)?);
    }
    Ok(out)
}

pub fn total_violations(suites: &[SuiteResult]) -> u64 {
    suites.iter().map(|s| s.violations).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(samples: u64) -> VerifyConfig {
        VerifyConfig {
            samples,
            seed: 3,
            lemma_tol: VerifyConfig::DEFAULT_LEMMA_TOL,
            carlson_tol: VerifyConfig::DEFAULT_CARLSON_TOL,
        }
    }

    #[test]
    fn small_run_is_clean_and_repeatable() {
        let a = run_all(&cfg(CHUNK + 17)).unwrap();
        assert_eq!(total_violations(&a), 0);
        assert_eq!(a, run_all(&cfg(CHUNK + 17)).unwrap());
        assert_eq!(a[1].checks, CHUNK + 17);
    }

    #[test]
    fn tight_bound_is_flagged() {
        let mut t = Tally::new();
        let c = [Complex64::new(0.0, 0.0); 4];
        t.record(0, "x", 1.0, 0.5, 0.0, &c);
        t.record(1, "x", 0.5, 0.5, 0.0, &c);
        assert_eq!(t.violations, 1);
        assert_eq!(t.worst, 0.5);
    }
}
