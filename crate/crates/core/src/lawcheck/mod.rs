//! Randomized verification of the laws of ray geometry.
//!
//! Every law is a named identity (or, for negative controls, an identity
//! that is expected to break) checked on seeded random instances. Trial
//! `t` in dimension `d` draws from the substream
//! `substream_seed(seed, law_id, d, t)`, so reports are bit-for-bit
//! reproducible whether trials run sequentially or in parallel.

mod laws;
mod sample;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::random::{substream_seed, TrialRng};
use rand::SeedableRng;

pub use laws::LAWS;
pub use sample::{random_ray_in, sample_instance, Flavor, Instance};

/// A law fails when more than this fraction of its trials are skipped.
pub const MAX_SKIP_RATE: f64 = 0.05;
/// A negative control passes when its identity breaks on more than this fraction of trials.
pub const MIN_HIT_RATE: f64 = 0.9;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 32;

/// Result of one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Residual of an identity, compared against the law's tolerance.
    Residual(f64),
    /// A negative-control trial; `hit` means the identity broke, `value` is
    /// the size of the violation.
    Control { hit: bool, value: f64 },
    /// The instance fell outside the law's hypotheses.
    Skip,
    /// A sub-check failed outright.
    Fail { residual: f64, reason: String },
}

impl Outcome {
    pub fn fail(residual: f64, reason: impl Into<String>) -> Outcome {
        Outcome::Fail {
            residual,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    Identity,
    NegativeControl,
}

/// How many trials per dimension a law runs, relative to the requested count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    PerDim,
    Scaled(usize),
    Capped(usize),
}

impl Budget {
    pub fn trials(self, requested: usize) -> usize {
        match self {
            Budget::PerDim => requested,
            Budget::Scaled(k) => requested.saturating_mul(k),
            Budget::Capped(c) => requested.min(c),
        }
    }
}

pub type Checker = fn(&Instance, &mut TrialRng) -> Result<Outcome>;

/// A registered law.
pub struct Law {
    pub id: &'static str,
    pub statement: &'static str,
    pub flavor: Flavor,
    pub kind: LawKind,
    pub tolerance: f64,
    pub min_dim: usize,
    pub budget: Budget,
    pub check: Checker,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Law")
            .field("id", &self.id)
            .field("flavor", &self.flavor)
            .field("kind", &self.kind)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

pub fn find_law(id: &str) -> Result<&'static Law> {
    LAWS.iter()
        .find(|l| l.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.to_string()))
}

pub fn law_ids() -> Vec<&'static str> {
    LAWS.iter().map(|l| l.id).collect()
}

/// What to sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub dims: Vec<usize>,
    pub trials_per_dim: usize,
    pub seed: u64,
    /// Replaces every law's own flavor when set.
    #[serde(default)]
    pub flavor: Option<Flavor>,
    /// Overrides every law's tolerance when set.
    #[serde(default)]
    pub tolerance: Option<f64>,
    /// Record wall-clock time in reports (breaks byte-identical output).
    #[serde(default)]
    pub record_timings: bool,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            dims: (2..=8).collect(),
            trials_per_dim: 1000,
            seed: 42,
            flavor: None,
            tolerance: None,
            record_timings: false,
        }
    }
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::InvalidValue("no dimensions requested".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| !(MIN_DIM..=MAX_DIM).contains(&d)) {
            return Err(Error::InvalidValue(format!(
                "dimension {d} outside {MIN_DIM}..={MAX_DIM}"
            )));
        }
        if self.trials_per_dim == 0 {
            return Err(Error::InvalidValue("trials per dimension must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidValue(format!("tolerance {t} must be positive")));
            }
        }
        Ok(())
    }
}

/// Outcome of checking one law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: String,
    pub statement: String,
    pub kind: LawKind,
    pub flavor: Flavor,
    pub trials_run: usize,
    pub trials_skipped: usize,
    /// For identities the largest residual seen. For negative controls the
    /// smallest violation seen, i.e. the trial closest to satisfying the identity.
    pub worst_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hit_rate: Option<f64>,
    pub pass: bool,
    /// The first offending trial in `(dim, trial)` order, with its instance.
    pub counterexample: Option<Value>,
    pub seed: u64,
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl LawReport {
    pub fn skip_rate(&self) -> f64 {
        let total = self.trials_run + self.trials_skipped;
        if total == 0 {
            0.0
        } else {
            self.trials_skipped as f64 / total as f64
        }
    }
}

/// Sequential or rayon-parallel evaluation of trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exec {
    Sequential,
    /// Falls back to sequential evaluation without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

struct Record {
    outcome: Outcome,
    offending: Option<Value>,
}

fn offends(tol: f64, outcome: &Outcome) -> bool {
    match outcome {
        Outcome::Residual(r) => r.is_nan() || *r > tol,
        Outcome::Control { hit, .. } => !hit,
        Outcome::Skip => false,
        Outcome::Fail { .. } => true,
    }
}

fn run_trial(law: &Law, gen: &GeneratorSpec, tol: f64, dim: usize, trial: usize) -> Record {
    let mut rng = TrialRng::seed_from_u64(substream_seed(gen.seed, law.id, dim as u64, trial as u64));
    let flavor = gen.flavor.unwrap_or(law.flavor);
    let inst = sample_instance(&mut rng, dim, flavor);
    let outcome = match (law.check)(&inst, &mut rng) {
        Ok(o) => o,
        Err(e) => Outcome::fail(f64::INFINITY, format!("{}: {e}", e.kind())),
    };
    let offending = offends(tol, &outcome).then(|| {
        let (residual, reason) = match &outcome {
            Outcome::Residual(r) => (*r, None),
            Outcome::Control { value, .. } => (*value, Some("identity held".to_string())),
            Outcome::Fail { residual, reason } => (*residual, Some(reason.clone())),
            Outcome::Skip => unreachable!(),
        };
        let mut v = serde_json::json!({
            "dim": dim,
            "trial": trial,
            "residual": residual,
            "instance": inst,
        });
        if let Some(reason) = reason {
            v["reason"] = Value::String(reason);
        }
        v
    });
    Record { outcome, offending }
}

fn collect_records(law: &Law, gen: &GeneratorSpec, tol: f64, dims: &[usize], exec: Exec) -> Vec<Record> {
    let n = law.budget.trials(gen.trials_per_dim);
    let jobs: Vec<(usize, usize)> = dims
        .iter()
        .flat_map(|&d| (0..n).map(move |t| (d, t)))
        .collect();
    let one = |&(d, t): &(usize, usize)| run_trial(law, gen, tol, d, t);
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            jobs.par_iter().map(one).collect()
        }
        _ => jobs.iter().map(one).collect(),
    }
}

/// Checks one law with an explicit execution strategy.
pub fn run_law_with(law: &Law, gen: &GeneratorSpec, exec: Exec) -> Result<LawReport> {
    gen.validate()?;
    let start = Instant::now();
    let tol = gen.tolerance.unwrap_or(law.tolerance);
    let dims: Vec<usize> = gen.dims.iter().copied().filter(|&d| d >= law.min_dim).collect();
    let records = collect_records(law, gen, tol, &dims, exec);

    let mut run = 0usize;
    let mut skipped = 0usize;
    let mut hits = 0usize;
    let mut worst: Option<f64> = None;
    let mut offending = false;
    for rec in &records {
        match &rec.outcome {
            Outcome::Skip => skipped += 1,
            Outcome::Residual(r) | Outcome::Fail { residual: r, .. } => {
                run += 1;
                let r = if r.is_nan() { f64::INFINITY } else { *r };
                worst = Some(worst.map_or(r, |w| w.max(r)));
            }
            Outcome::Control { hit, value } => {
                run += 1;
                hits += *hit as usize;
                worst = Some(worst.map_or(*value, |w| w.min(*value)));
            }
        }
        offending |= rec.offending.is_some();
    }
    let total = run + skipped;
    let skip_ok = total == 0 || (skipped as f64) < MAX_SKIP_RATE * total as f64;
    let (pass, hit_rate) = match law.kind {
        LawKind::Identity => (!offending && skip_ok, None),
        LawKind::NegativeControl => {
            let rate = if run == 0 { 0.0 } else { hits as f64 / run as f64 };
            let failed_outright = records.iter().any(|r| matches!(r.outcome, Outcome::Fail { .. }));
            (
                (run == 0 || rate > MIN_HIT_RATE) && skip_ok && !failed_outright,
                Some(rate),
            )
        }
    };
    let counterexample = if pass {
        None
    } else {
        records.into_iter().find_map(|r| r.offending)
    };
    Ok(LawReport {
        law_id: law.id.to_string(),
        statement: law.statement.to_string(),
        kind: law.kind,
        flavor: gen.flavor.unwrap_or(law.flavor),
        trials_run: run,
        trials_skipped: skipped,
        worst_residual: worst.unwrap_or(0.0),
        tolerance: tol,
        hit_rate,
        pass,
        counterexample,
        seed: gen.seed,
        dims,
        elapsed_ms: gen.record_timings.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Checks the law named `id`.
pub fn run_law(id: &str, gen: &GeneratorSpec) -> Result<LawReport> {
    run_law_with(find_law(id)?, gen, Exec::default())
}

/// Checks a selection of laws, in registry order.
pub fn run_laws_with(laws: &[&Law], gen: &GeneratorSpec, exec: Exec) -> Result<Vec<LawReport>> {
    laws.iter().map(|law| run_law_with(law, gen, exec)).collect()
}

/// Checks every registered law.
pub fn run_all(gen: &GeneratorSpec) -> Result<Vec<LawReport>> {
    let all: Vec<&Law> = LAWS.iter().collect();
    run_laws_with(&all, gen, Exec::default())
}
