//! The JSON/text report produced by `info`.

use anyhow::Result;
use serde_json::{json, Value};

use polydefect_core::{defect, ehrhart, LatticePolytope};

use crate::format::{int_json, int_vec_json};

pub const FORMAT_VERSION: u32 = 1;

/// Computes the full invariant report for one polytope.
pub fn build_report(
    p: &LatticePolytope,
    input: &str,
    width_radius: Option<u32>,
) -> Result<Value> {
    let profile = ehrhart::ehrhart_profile(p).map_err(internal)?;
    let verdict = defect::defect_verdict(p).map_err(internal)?;
    let mut report = json!({
        "format": FORMAT_VERSION,
        "input": input,
        "invariants": {
            "ambient_dim": p.ambient_dim(),
            "dim": p.dim(),
            "vertex_count": p.vertex_count(),
            "f_vector": p.f_vector(),
            "lattice_point_count": int_json(&ehrhart::count_points(p, 1)),
            "simple": p.is_simple(),
            "smooth": p.is_smooth(),
            "h_star": int_vec_json(&profile.h_star),
            "normalized_volume": int_json(&profile.normalized_volume),
            "degree": profile.degree,
            "codegree": profile.codegree,
            "c": int_json(&verdict.c_value),
        },
        "verdict": {
            "is_smooth": verdict.is_smooth,
            "codegree": verdict.codegree,
            "dim": verdict.dim,
            "c": int_json(&verdict.c_value),
            "criterion_met": verdict.criterion_met,
            "defect": verdict.defect,
            "note": verdict.q_normal_note,
        },
    });
    if let Some(radius) = width_radius {
        // The width scan needs a full-dimensional polytope; for lower-
        // dimensional input, search the affine-hull chart model instead and
        // say so. Lattice widths are invariant under that identification.
        let full_dim = p.dim() == p.ambient_dim();
        let dirs = if full_dim {
            p.width_one_directions(radius).map_err(internal)?
        } else {
            let (model, _) = p.full_dimensional_model();
            model.width_one_directions(radius).map_err(internal)?
        };
        let dirs: Vec<Value> = dirs.iter().map(|d| int_vec_json(d)).collect();
        report["width_one_directions"] = Value::from(dirs);
        report["width_one_coordinates"] =
            Value::from(if full_dim { "ambient" } else { "affine-chart" });
    }
    Ok(report)
}

/// Renders the report as aligned text for humans.
pub fn render_text(report: &Value) -> String {
    let inv = &report["invariants"];
    let verdict = &report["verdict"];
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(&format!("{k:<22} {v}\n"));
    };
    line("input", report["input"].as_str().unwrap_or("?").to_string());
    for key in [
        "ambient_dim",
        "dim",
        "vertex_count",
        "f_vector",
        "lattice_point_count",
        "simple",
        "smooth",
        "h_star",
        "normalized_volume",
        "degree",
        "codegree",
        "c",
    ] {
        line(key, compact(&inv[key]));
    }
    line("criterion_met", compact(&verdict["criterion_met"]));
    line("defect", compact(&verdict["defect"]));
    line("note", verdict["note"].as_str().unwrap_or("").to_string());
    if let Some(dirs) = report.get("width_one_directions") {
        line("width_one_directions", compact(dirs));
        line(
            "width_one_coordinates",
            compact(&report["width_one_coordinates"]),
        );
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn internal(e: polydefect_core::Error) -> anyhow::Error {
    anyhow::Error::new(crate::commands::Internal(e.to_string()))
}
