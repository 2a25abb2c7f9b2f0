use serde::{Deserialize, Serialize};

use raygeo::geometry::{a_sim, p_sim, theta};
use raygeo::superposition::{omega, superpose, SuperpositionSpec};
use raygeo::Ray;

use crate::cli::{DemoArgs, Format};
use crate::commands::{emit, emit_text, read_json};
use crate::Verdict;

const DEFAULT_CONFIG: &str = include_str!("../data/two_slit.json");

/// Two slit states, the weight of the first, and detector states.
#[derive(Debug, Deserialize)]
pub struct TwoSlit {
    pub y: Ray,
    pub z: Ray,
    pub r: f64,
    pub detectors: Vec<Ray>,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub detector: usize,
    /// Similarity of the superposed state to the detector.
    pub quantum: f64,
    /// The same weights applied to the slit similarities (a mixture).
    pub classical: f64,
    pub difference: f64,
    /// `2 cos theta sqrt(r (1 - r) p(y, x) p(z, x)) / omega`.
    pub interference: f64,
}

#[derive(Debug, Serialize)]
pub struct Table {
    pub r: f64,
    pub omega: f64,
    pub rows: Vec<Row>,
}

pub fn tabulate(cfg: &TwoSlit) -> raygeo::Result<Table> {
    let spec = SuperpositionSpec::new(cfg.y.clone(), cfg.z.clone(), cfg.r)?;
    let s = superpose(&spec)?;
    let w = omega(cfg.r, &cfg.y, &cfg.z)?;
    let r = cfg.r;
    let rows = cfg
        .detectors
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let (pyx, pzx) = (p_sim(&cfg.y, x)?, p_sim(&cfg.z, x)?);
            let classical = r * pyx + (1.0 - r) * pzx;
            let quantum = p_sim(&s, x)?;
            let cross = r * (1.0 - r) * pyx * pzx;
            let interference = if a_sim(&cfg.y, x)? <= 1e-8 || a_sim(&cfg.z, x)? <= 1e-8 {
                0.0
            } else {
                2.0 * theta(x, &cfg.y, &cfg.z)?.cos() * cross.sqrt() / w
            };
            Ok(Row {
                detector: i,
                quantum,
                classical,
                difference: quantum - classical,
                interference,
            })
        })
        .collect::<raygeo::Result<Vec<_>>>()?;
    Ok(Table { r, omega: w, rows })
}

fn render(t: &Table) -> String {
    let mut out = format!("r = {}, omega = {:.6}\n", t.r, t.omega);
    out += &format!(
        "{:>8}  {:>10}  {:>10}  {:>11}  {:>12}\n",
        "detector", "quantum", "classical", "difference", "interference"
    );
    for row in &t.rows {
        out += &format!(
            "{:>8}  {:>10.6}  {:>10.6}  {:>11.6}  {:>12.6}\n",
            row.detector, row.quantum, row.classical, row.difference, row.interference
        );
    }
    out
}

pub fn run(args: &DemoArgs) -> Verdict {
    let cfg: TwoSlit = match &args.config {
        Some(p) => read_json(p)?,
        None => serde_json::from_str(DEFAULT_CONFIG).expect("built-in configuration parses"),
    };
    let table = tabulate(&cfg)?;
    match args.format {
        Format::Json => emit(&table, None)?,
        Format::Table => emit_text(&render(&table), None)?,
    }
    Ok(true)
}
