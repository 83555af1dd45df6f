//! Lower bounds for `sup |H₃(1)|` by random search over Schur parameters.
//!
//! Every candidate is a genuine Schwarz function, so every value found is a
//! true lower bound. The search starts at the zero function, spends half the
//! budget on area-uniform samples, then refines the best few by shrinking
//! coordinate-wise perturbations projected back onto the closed disk.

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::bound_for;
use crate::classes::{ClassId, HankelEvaluator};
use crate::error::{Error, Result};
use crate::lemmas::{SchwarzSample, sample_one, uniform_disk};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub class: ClassId,
    /// Total number of `H₃(1)` evaluations, including the zero start.
    pub budget: u64,
    /// Perturbation rounds per refined start.
    pub refine_iters: u32,
    pub seed: u64,
    /// Initial perturbation radius.
    pub step_scale: f64,
}

impl SearchConfig {
    pub const DEFAULT_BUDGET: u64 = 100_000;
    pub const DEFAULT_REFINE_ITERS: u32 = 200;
    pub const DEFAULT_STEP_SCALE: f64 = 0.5;

    pub fn new(class: ClassId, seed: u64) -> Self {
        Self {
            class,
            budget: Self::DEFAULT_BUDGET,
            refine_iters: Self::DEFAULT_REFINE_ITERS,
            seed,
            step_scale: Self::DEFAULT_STEP_SCALE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidArgument("budget must be at least 1".into()));
        }
        if !(self.step_scale > 0.0 && self.step_scale <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "step scale {} outside (0, 1]",
                self.step_scale
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub class: ClassId,
    pub best_value: f64,
    pub witness: SchwarzSample,
    /// `(evaluation, best so far)` at every improvement.
    pub history: Vec<(u64, f64)>,
    pub class_upper_bound: f64,
    pub evaluations: u64,
}

/// Number of random samples kept as refinement starts.
const ELITE: usize = 8;
/// Radius shrink factor after a round without improvement.
const SHRINK: f64 = 0.6;
const MIN_RADIUS: f64 = 1e-9;

struct State<'a> {
    eval: &'a HankelEvaluator,
    used: u64,
    budget: u64,
    best: (f64, SchwarzSample),
    history: Vec<(u64, f64)>,
}

impl State<'_> {
    fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    fn evaluate(&mut self, s: &SchwarzSample) -> f64 {
        self.used += 1;
        let v = self.eval.eval(&s.c).norm();
        if v > self.best.0 {
            self.best = (v, *s);
            self.history.push((self.used, v));
        }
        v
    }
}

pub fn search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let eval = HankelEvaluator::new(cfg.class)?;
    let upper = bound_for(cfg.class)?.upper_bound;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let zero = SchwarzSample::zero();
    let mut st = State {
        eval: &eval,
        used: 1,
        budget: cfg.budget,
        best: (eval.eval(&zero.c).norm(), zero),
        history: Vec::new(),
    };
    st.history.push((1, st.best.0));

    let random = (cfg.budget - 1) / 2;
    let mut elite: Vec<(f64, SchwarzSample)> = Vec::with_capacity(ELITE + 1);
    for _ in 0..random {
        let s = sample_one(&mut rng);
        let v = st.evaluate(&s);
        if elite.len() < ELITE || v > elite[elite.len() - 1].0 {
            let pos = elite.iter().position(|e| v > e.0).unwrap_or(elite.len());
            elite.insert(pos, (v, s));
            elite.truncate(ELITE);
        }
    }
    if elite.is_empty() {
        elite.push(st.best);
    }

    let mut start = 0;
    while !st.exhausted() {
        let (v0, s0) = if start < elite.len() { elite[start] } else { st.best };
        start += 1;
        refine(&mut st, &mut rng, v0, s0, cfg);
    }

    let (best_value, witness) = st.best;
    Ok(SearchResult {
        class: cfg.class,
        best_value,
        witness,
        history: st.history,
        class_upper_bound: upper,
        evaluations: st.used,
    })
}

fn refine(st: &mut State<'_>, rng: &mut ChaCha8Rng, mut value: f64, mut current: SchwarzSample, cfg: &SearchConfig) {
    let mut radius = cfg.step_scale;
    for _ in 0..cfg.refine_iters {
        let mut improved = false;
        for k in 0..4 {
            if st.exhausted() {
                return;
            }
            let mut params = current.schur_params;
            params[k] += uniform_disk(rng) * radius;
            let candidate = SchwarzSample::from_schur(params);
            let v = st.evaluate(&candidate);
            if v > value {
                value = v;
                current = candidate;
                improved = true;
            }
        }
        if !improved {
            radius = (radius * SHRINK).max(MIN_RADIUS);
        }
    }
}

/// Comparison row: search lower bound, proved upper bound, earlier bound.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRow {
    pub class: ClassId,
    pub lower: f64,
    pub upper: f64,
    pub prior: Option<f64>,
    /// `lower / upper`.
    pub ratio: f64,
}

/// Earlier published upper bounds, where one exists.
pub fn prior_bound(class: ClassId) -> Option<f64> {
    match class {
        ClassId::SymmetricPoints => Some(2.5),
        ClassId::Exponential => Some(0.500_477_81),
        _ => None,
    }
}

pub fn gap_row(r: &SearchResult) -> GapRow {
    GapRow {
        class: r.class,
        lower: r.best_value,
        upper: r.class_upper_bound,
        prior: prior_bound(r.class),
        ratio: r.best_value / r.class_upper_bound,
    }
}

/// One row per class, in [`ClassId::ALL`] order. Every class must be present.
pub fn gap_report(results: &[SearchResult]) -> Result<Vec<GapRow>> {
    ClassId::ALL
        .iter()
        .map(|&class| {
            let best = results
                .iter()
                .filter(|r| r.class == class)
                .max_by(|a, b| a.best_value.total_cmp(&b.best_value))
                .ok_or_else(|| Error::InvalidArgument(format!("no search result for class {class}")))?;
            Ok(gap_row(best))
        })
        .collect()
}

/// Re-evaluates a witness from its Schur parameters.
pub fn reevaluate(class: ClassId, witness: &SchwarzSample) -> Result<f64> {
    let s = SchwarzSample::from_schur(witness.schur_params);
    Ok(HankelEvaluator::new(class)?.eval(&s.c).norm())
}
