use anyhow::{anyhow, bail, Context};
use glob::Pattern;

use raygeo::lawcheck::{run_laws_with, Exec, Law, LAWS};
use raygeo::{GeneratorSpec, LawReport};

use crate::cli::{Format, VerifyArgs};
use crate::commands::{emit, emit_text};
use crate::Verdict;

/// Parses `a..b` (inclusive), `a..=b` or a comma-separated list.
pub fn parse_dims(s: &str) -> anyhow::Result<Vec<usize>> {
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<usize>().with_context(|| format!("bad dimension `{t}`"));
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            bail!("empty dimension range `{s}`");
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(num).collect()
}

fn select(pattern: &str) -> anyhow::Result<Vec<&'static Law>> {
    let pat = Pattern::new(pattern).with_context(|| format!("bad law pattern `{pattern}`"))?;
    let laws: Vec<&Law> = LAWS.iter().filter(|l| pat.matches(l.id)).collect();
    if laws.is_empty() {
        return Err(anyhow!("no law matches `{pattern}`"));
    }
    Ok(laws)
}

fn sci(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.2e}")
    }
}

pub fn table(reports: &[LawReport]) -> String {
    let width = reports.iter().map(|r| r.law_id.len()).max().unwrap_or(3).max(3);
    let mut out = format!(
        "{:<width$}  {:<6}  {:>7}  {:>7}  {:>9}  {:>8}\n",
        "law", "result", "trials", "skipped", "worst", "tol"
    );
    for r in reports {
        out += &format!(
            "{:<width$}  {:<6}  {:>7}  {:>7}  {:>9}  {:>8}\n",
            r.law_id,
            if r.pass { "PASS" } else { "FAIL" },
            r.trials_run,
            r.trials_skipped,
            sci(r.worst_residual),
            sci(r.tolerance),
        );
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    out += &format!("{passed}/{} laws pass\n", reports.len());
    out
}

pub fn run(args: &VerifyArgs) -> Verdict {
    let gen = GeneratorSpec {
        dims: parse_dims(&args.dims)?,
        trials_per_dim: args.trials,
        seed: args.seed,
        flavor: args.flavor,
        tolerance: args.tol,
        record_timings: args.timings,
    };
    gen.validate().map_err(|e| anyhow!("{e}"))?;
    let laws = select(&args.laws)?;
    let exec = if args.sequential { Exec::Sequential } else { Exec::Parallel };
    let reports = run_laws_with(&laws, &gen, exec)?;
    match args.format {
        Format::Json => emit(&reports, args.out.as_deref())?,
        Format::Table => emit_text(&table(&reports), args.out.as_deref())?,
    }
    Ok(reports.iter().all(|r| r.pass))
}
