//! Output rendering: text, CSV, and versioned JSON (schema documented in
//! docs/output-schema.json).

use std::fmt::Write as _;

use genus_core::catalog::ManifoldModel;
use genus_core::formulas::GenusResult;
use genus_core::genus::{self, GenusError};
use genus_core::lattice::HomologyClass;
use genus_core::profile::Profile;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn coords_json(a: &HomologyClass) -> Value {
    Value::from(a.coords().to_vec())
}

fn genus_json(a: &HomologyClass, r: &GenusResult) -> Value {
    json!({
        "class": coords_json(a),
        "lower": r.lower,
        "upper": r.upper,
        "exact": r.exact,
        "provenance": r.provenance.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

pub fn render_genus(model: &ManifoldModel, a: &HomologyClass, r: &GenusResult, f: Format) -> String {
    match f {
        Format::Text => {
            let mut out = String::new();
            if r.exact {
                let _ = writeln!(out, "{} {} genus = {}", model.name, a.display(), r.lower);
            } else {
                let upper = r
                    .upper
                    .map(|u| u.to_string())
                    .unwrap_or_else(|| "?".to_string());
                let _ = writeln!(out, "{} {} genus in [{}, {}]", model.name, a.display(), r.lower, upper);
            }
            for p in &r.provenance {
                let _ = writeln!(out, "  {p}");
            }
            out
        }
        Format::Json => {
            let mut v = genus_json(a, r);
            v["schema_version"] = json!(SCHEMA_VERSION);
            v["manifold"] = json!(model.name);
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => {
            let coords = a
                .coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(";");
            let upper = r.upper.map(|u| u.to_string()).unwrap_or_default();
            format!("{},{coords},{},{upper},{}\n", model.name, r.lower, r.exact)
        }
    }
}

/// All classes with coordinates in `[-range, range]`, in lexicographic
/// coordinate order.
fn grid(rank: usize, range: i64) -> Vec<HomologyClass> {
    let mut out = Vec::new();
    let mut coords = vec![-range; rank];
    loop {
        out.push(HomologyClass::new(coords.clone()));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if coords[i] < range {
                coords[i] += 1;
                break;
            }
            coords[i] = -range;
        }
    }
}

pub fn render_table(model: &ManifoldModel, range: i64, f: Format) -> Result<String, GenusError> {
    let mut rows = Vec::new();
    for a in grid(model.form.rank(), range) {
        let r = genus::evaluate(model, &a)?;
        rows.push((a, r));
    }
    let mut out = String::new();
    match f {
        Format::Text => {
            for (a, r) in &rows {
                let upper = match (r.exact, r.upper) {
                    (true, _) => r.lower.to_string(),
                    (false, Some(u)) => format!("[{}, {u}]", r.lower),
                    (false, None) => format!("[{}, ?]", r.lower),
                };
                let _ = writeln!(out, "{}\t{}", a.display(), upper);
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "coords,lower,upper,exact");
            for (a, r) in &rows {
                let coords = a
                    .coords()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                let upper = r.upper.map(|u| u.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{coords},{},{upper},{}", r.lower, r.exact);
            }
        }
        Format::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "manifold": model.name,
                "range": range,
                "rows": rows.iter().map(|(a, r)| genus_json(a, r)).collect::<Vec<_>>(),
            });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap());
        }
    }
    Ok(out)
}

pub fn render_profile(model: &ManifoldModel, p: &Profile, f: Format) -> String {
    match f {
        Format::Text => {
            let mut out = String::new();
            let entries = p
                .entries
                .iter()
                .map(|e| {
                    if e.exact {
                        e.lower.to_string()
                    } else if let Some(u) = e.upper {
                        format!("[{}, {u}]", e.lower)
                    } else {
                        format!("[{}, ?]", e.lower)
                    }
                })
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "{} profile: ({entries})", model.name);
            for (i, w) in p.witness.vectors.iter().enumerate() {
                let _ = writeln!(out, "  witness[{i}] = {}", w.display());
            }
            if let Some(r) = p.radius {
                let _ = writeln!(out, "  search radius: {r}");
            }
            if p.relaxed {
                let _ = writeln!(out, "  note: last witness vector has square 0 or 1 (relaxed sequence)");
            }
            out
        }
        Format::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "manifold": model.name,
                "entries": p.entries.iter().map(|e| json!({
                    "lower": e.lower,
                    "upper": e.upper,
                    "exact": e.exact,
                })).collect::<Vec<_>>(),
                "witness": p.witness.vectors.iter().map(coords_json).collect::<Vec<_>>(),
                "radius": p.radius,
                "relaxed": p.relaxed,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "index,lower,upper,exact");
            for (i, e) in p.entries.iter().enumerate() {
                let upper = e.upper.map(|u| u.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{i},{},{upper},{}", e.lower, e.exact);
            }
            out
        }
    }
}

pub fn render_sw(model: &ManifoldModel, f: Format) -> String {
    match f {
        Format::Text => {
            let mut out = String::new();
            for b in &model.basic_classes {
                let kappa = b
                    .kappa
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(out, "{}\tsw={}\tkappa=({kappa})", b.id, b.sw);
            }
            out
        }
        Format::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "manifold": model.name,
                "basic_classes": model.basic_classes.iter().map(|b| json!({
                    "id": b.id,
                    "sw": b.sw,
                    "kappa": b.kappa,
                })).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "id,sw,kappa");
            for b in &model.basic_classes {
                let kappa = b
                    .kappa
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                let _ = writeln!(out, "{},{},{kappa}", b.id, b.sw);
            }
            out
        }
    }
}
