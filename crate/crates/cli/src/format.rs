//! On-disk polytope format and JSON helpers for reports.
//!
//! A polytope file is a JSON object
//! `{"ambient_dim": n, "vertices": [[..], ..]}` with integer coordinates.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use polydefect_core::{Int, LatticePolytope};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeFile {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        let pts: Vec<Vec<Int>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        LatticePolytope::from_vertices(self.ambient_dim, &pts)
            .map_err(|e| anyhow::anyhow!("invalid polytope: {e}"))
    }

    pub fn from_polytope(p: &LatticePolytope) -> Result<Self> {
        let vertices = p
            .vertices()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| {
                        c.to_i64()
                            .context("vertex coordinate does not fit the file format")
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolytopeFile {
            ambient_dim: p.ambient_dim(),
            vertices,
        })
    }
}

pub fn load_polytope(path: &Path) -> Result<LatticePolytope> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: PolytopeFile = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid polytope file", path.display()))?;
    if file.vertices.is_empty() {
        bail!("{} contains no vertices", path.display());
    }
    file.to_polytope()
}

/// A big integer as a JSON value: a number when it fits in `i64`, a decimal
/// string otherwise.
pub fn int_json(x: &Int) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub fn int_vec_json(xs: &[Int]) -> serde_json::Value {
    serde_json::Value::from(xs.iter().map(int_json).collect::<Vec<_>>())
}
