use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use raygeo::geometry::{coplanar, p_prop, p_sim, theta};
use raygeo::probability::{interference_terms, search_nonsquared_counterexample};
use raygeo::superposition::{self, p_of_superposition_closed_form, SuperpositionSpec};
use raygeo::{Error, Projected, Ray, Subspace};

use crate::cli::{ComputeCmd, SearchArgs, SuperposeArgs};
use crate::{Failure, Verdict};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes pretty JSON (plus a newline) to `out`, or to standard output.
pub fn emit(value: &impl serde::Serialize, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    emit_text(&text, out)
}

pub fn emit_text(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    match e {
        Error::OrthogonalPair(pair) => v["pair"] = json!(pair),
        Error::OrthogonalComponents => {
            v["hint"] = json!("orthogonal states have no superposition; choose components with non-zero overlap")
        }
        _ => {}
    }
    v
}

/// A ray or a subspace; files holding a `rep` field are read as rays.
#[derive(Deserialize)]
#[serde(untagged)]
enum Target {
    Ray(Ray),
    Subspace(Subspace),
}

impl Target {
    fn into_subspace(self) -> Subspace {
        match self {
            Target::Ray(r) => r.to_subspace(),
            Target::Subspace(s) => s,
        }
    }
}

pub fn compute(cmd: &ComputeCmd) -> Verdict {
    let value = match cmd {
        ComputeCmd::P(args) => {
            let a: Ray = read_json(&args.a)?;
            match read_json::<Target>(&args.b)? {
                Target::Ray(b) => json!(p_sim(&a, &b)?),
                Target::Subspace(b) => json!(p_prop(&a, &b)?),
            }
        }
        ComputeCmd::Theta(args) => {
            let (a, b, c): (Ray, Ray, Ray) = (read_json(&args.a)?, read_json(&args.b)?, read_json(&args.c)?);
            json!(theta(&a, &b, &c)?)
        }
        ComputeCmd::Project(args) => {
            let a: Ray = read_json(&args.a)?;
            let b = read_json::<Target>(&args.b)?.into_subspace();
            match b.project_ray(&a)? {
                Projected::Zero => Value::Null,
                Projected::Ray(r) => serde_json::to_value(r).map_err(anyhow::Error::from)?,
            }
        }
        ComputeCmd::Coplanar(args) => {
            let (a, b, c): (Ray, Ray, Ray) = (read_json(&args.a)?, read_json(&args.b)?, read_json(&args.c)?);
            json!(coplanar(&a, &b, &c)?)
        }
    };
    emit(&json!({ "value": value }), None)?;
    Ok(true)
}

fn superposition_output(spec: &SuperpositionSpec, x: Option<&Ray>) -> Result<Value, Failure> {
    let ray = superposition::superpose(spec)?;
    Ok(match x {
        None => serde_json::to_value(&ray).map_err(anyhow::Error::from)?,
        Some(x) => json!({
            "ray": ray,
            "p_closed_form": p_of_superposition_closed_form(spec, x)?,
            "p_direct": p_sim(&ray, x)?,
        }),
    })
}

pub fn superpose(args: &SuperposeArgs) -> Verdict {
    let spec: SuperpositionSpec = read_json(&args.spec)?;
    let x: Option<Ray> = args.report_p.as_deref().map(read_json).transpose()?;
    let out = superposition_output(&spec, x.as_ref())?;
    emit(&out, args.out.as_deref())?;
    Ok(true)
}

pub fn search(args: &SearchArgs) -> Verdict {
    match search_nonsquared_counterexample(args.seed, args.budget) {
        Some(w) => {
            let t = interference_terms(&w.x, &w.alpha_basis, &w.beta_basis)?;
            if t.unsquared_margin() >= 0.0 || t.squared_margin() < -1e-12 {
                eprintln!("witness at trial {} did not survive re-checking", w.trial);
                return Ok(false);
            }
            emit(&w, None)?;
            Ok(true)
        }
        None => {
            emit(&json!({ "result": "NotFound", "seed": args.seed, "budget": args.budget }), None)?;
            Ok(false)
        }
    }
}
