//! Implementations of the subcommands. Each returns the process exit code:
//! 0 on success, 1 when a checked identity or internal consistency fails,
//! 2 for usage and input errors (mapped in `main`).

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use polydefect_core::identities::{self, IdentityReport};
use polydefect_core::polytope::build::simplex;
use polydefect_core::{defect, ehrhart, Int, LatticePolytope};

use crate::construct;
use crate::format::{int_json, PolytopeFile};
use crate::fuzz::{self, FuzzKind};
use crate::report;

/// Marker for failures of the implementation itself (exit code 1), as
/// opposed to bad input (exit code 2).
#[derive(Debug)]
pub struct Internal(pub String);

impl fmt::Display for Internal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for Internal {}

pub fn cmd_info(file: &Path, json: bool, radius: Option<u32>) -> Result<i32> {
    let p = crate::format::load_polytope(file)?;
    let report = report::build_report(&p, &file.display().to_string(), radius)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report::render_text(&report));
    }
    Ok(0)
}

pub fn cmd_construct(spec: &str, out: Option<&PathBuf>) -> Result<i32> {
    let p = construct::build(spec, Path::new("."))?;
    let file = PolytopeFile::from_polytope(&p)?;
    let text = serde_json::to_string_pretty(&file)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Convolution,
    AlternatingSum,
    Certificate,
    Recurrences,
    All,
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityRanges {
    pub conv_max: i64,
    pub n_max: i64,
    pub cert_a_max: i64,
    pub cert_j_max: i64,
    pub rec_a_max: i64,
    pub rec_j_max: i64,
}

impl Default for IdentityRanges {
    fn default() -> Self {
        IdentityRanges {
            conv_max: 20,
            n_max: 12,
            cert_a_max: 6,
            cert_j_max: 10,
            rec_a_max: 5,
            rec_j_max: 12,
        }
    }
}

pub fn cmd_identities(
    suite: Suite,
    ranges: IdentityRanges,
    probe: Option<&str>,
    json: bool,
) -> Result<i32> {
    if let Some(probe) = probe {
        return probe_certificate(probe);
    }
    let mut reports = Vec::new();
    if matches!(suite, Suite::Convolution | Suite::All) {
        reports.push(identities::sweep_convolution(ranges.conv_max, ranges.conv_max));
    }
    if matches!(suite, Suite::AlternatingSum | Suite::All) {
        reports.push(identities::sweep_alternating_sum(ranges.n_max));
    }
    if matches!(suite, Suite::Certificate | Suite::All) {
        reports.push(identities::sweep_certificate(ranges.cert_a_max, ranges.cert_j_max));
    }
    if matches!(suite, Suite::Recurrences | Suite::All) {
        reports.push(identities::sweep_recurrences(ranges.rec_a_max, ranges.rec_j_max));
    }
    let failed = reports.iter().any(|r| !r.passed);
    if json {
        let values: Vec<Value> = reports.iter().map(identity_report_json).collect();
        println!("{}", serde_json::to_string_pretty(&values)?);
    } else {
        for r in &reports {
            print_identity_report(r);
        }
    }
    Ok(if failed { 1 } else { 0 })
}

/// Evaluates the telescoping certificate at one explicit parameter point;
/// out-of-domain parameters are reported, not treated as failures.
fn probe_certificate(probe: &str) -> Result<i32> {
    let parts: Vec<i64> = probe
        .split(',')
        .map(|s| s.trim().parse::<i64>().context("probe must be a,j,k,i integers"))
        .collect::<Result<_>>()?;
    let [a, j, k, i] = parts[..] else {
        bail!("probe needs exactly four integers: a,j,k,i");
    };
    match identities::wz_certificate_check(a, j, k, i) {
        Ok(true) => {
            println!("PASS certificate at a={a}, j={j}, k={k}, i={i}");
            Ok(0)
        }
        Ok(false) => {
            println!("FAIL certificate at a={a}, j={j}, k={k}, i={i}");
            Ok(1)
        }
        Err(e) => {
            println!("OUT OF DOMAIN at a={a}, j={j}, k={k}, i={i}: {e}");
            Ok(0)
        }
    }
}

fn identity_report_json(r: &IdentityReport) -> Value {
    json!({
        "identity": r.identity_name,
        "parameters": r.parameters,
        "passed": r.passed,
        "first_failure": r.first_failure.as_ref().map(|w| json!({
            "parameters": w.parameters.iter()
                .map(|(k, v)| json!({"name": k, "value": v}))
                .collect::<Vec<_>>(),
            "lhs": w.lhs.to_string(),
            "rhs": w.rhs.to_string(),
        })),
    })
}

fn print_identity_report(r: &IdentityReport) {
    if r.passed {
        println!("PASS {} ({})", r.identity_name, r.parameters);
    } else {
        let w = r.first_failure.as_ref().expect("failed report has a witness");
        let params: Vec<String> =
            w.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "FAIL {} at {}: lhs {} != rhs {}",
            r.identity_name,
            params.join(", "),
            w.lhs,
            w.rhs
        );
    }
}

pub enum SurveyFamily {
    Segre { k1_max: usize, k2_max: usize },
    DilatedSimplex { factors: usize, d_max: u32, k_max: usize },
}

pub fn cmd_survey(family: SurveyFamily, json: bool) -> Result<i32> {
    match family {
        SurveyFamily::Segre { k1_max, k2_max } => survey_segre(k1_max, k2_max, json),
        SurveyFamily::DilatedSimplex { factors, d_max, k_max } => {
            survey_dilated(factors, d_max, k_max, json)
        }
    }
}

fn survey_segre(k1_max: usize, k2_max: usize, json: bool) -> Result<i32> {
    if k1_max == 0 || k2_max == 0 {
        bail!("segre bounds must be >= 1");
    }
    let mut rows = Vec::new();
    for k1 in 1..=k1_max {
        for k2 in 1..=k2_max {
            let closed = defect::c_segre_closed(k1 as i64, k2 as i64)
                .map_err(|e| Internal(e.to_string()))?;
            // Direct face-lattice evaluation stays desk-scale up to dim 7.
            let general = if k1 + k2 <= 7 {
                let p = simplex(k1).product(&simplex(k2));
                Some(defect::c_invariant(&p).map_err(|e| Internal(e.to_string()))?)
            } else {
                None
            };
            let agree = general.as_ref().map(|g| g == &closed);
            let defective = defect::segre_veronese_defect(&[1, 1], &[k1 as i64, k2 as i64])
                .map_err(|e| Internal(e.to_string()))?;
            rows.push((k1, k2, closed, general, agree, defective));
        }
    }
    let mismatch = rows.iter().any(|r| r.4 == Some(false));
    if json {
        let values: Vec<Value> = rows
            .iter()
            .map(|(k1, k2, closed, general, agree, defective)| {
                json!({
                    "k1": k1,
                    "k2": k2,
                    "dim": k1 + k2,
                    "codegree": (k1 + 1).max(k2 + 1),
                    "c_closed": int_json(closed),
                    "c_general": general.as_ref().map(int_json),
                    "agree": agree,
                    "defective": defective,
                })
            })
            .collect();
        let out = json!({
            "family": "segre",
            "note": "defective exactly when k1 != k2; the simplified criterion and the closed form for c agree on that",
            "rows": values,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{:>3} {:>3} {:>4} {:>9} {:>10} {:>10} {:>6} {:>10}",
            "k1", "k2", "dim", "codegree", "c_closed", "c_general", "agree", "defective");
        for (k1, k2, closed, general, agree, defective) in &rows {
            println!(
                "{:>3} {:>3} {:>4} {:>9} {:>10} {:>10} {:>6} {:>10}",
                k1,
                k2,
                k1 + k2,
                (k1 + 1).max(k2 + 1),
                closed.to_string(),
                general.as_ref().map_or("-".to_string(), Int::to_string),
                agree.map_or("-".to_string(), |a| a.to_string()),
                defective
            );
        }
        println!("note: defective exactly when k1 != k2");
    }
    Ok(if mismatch { 1 } else { 0 })
}

fn survey_dilated(factors: usize, d_max: u32, k_max: usize, json: bool) -> Result<i32> {
    if factors == 0 || d_max == 0 || k_max == 0 {
        bail!("dilated-simplex bounds must be >= 1");
    }
    // Non-decreasing tuples of (d, k) pairs, to list each product once.
    let options: Vec<(u32, usize)> = (1..=d_max)
        .flat_map(|d| (1..=k_max).map(move |k| (d, k)))
        .collect();
    let mut tuples: Vec<Vec<(u32, usize)>> = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == factors {
            tuples.push(cur);
            continue;
        }
        for (i, opt) in options.iter().enumerate().skip(start) {
            let mut next = cur.clone();
            next.push(*opt);
            stack.push((i, next));
        }
    }
    tuples.sort();
    let mut rows = Vec::new();
    let mut mismatch = false;
    for tuple in &tuples {
        let dim: usize = tuple.iter().map(|&(_, k)| k).sum();
        if dim > 8 {
            continue; // out of desk scale
        }
        let predicted_cd = tuple
            .iter()
            .map(|&(d, k)| (k + d as usize) / d as usize)
            .max()
            .unwrap();
        let direct_cd = if dim <= 6 {
            let mut p: Option<LatticePolytope> = None;
            for &(d, k) in tuple {
                let factor = simplex(k).dilate(d).map_err(|e| Internal(e.to_string()))?;
                p = Some(match p {
                    None => factor,
                    Some(acc) => acc.product(&factor),
                });
            }
            let cd = ehrhart::codegree(&p.expect("factors >= 1"))
                .map_err(|e| Internal(e.to_string()))?;
            if cd != predicted_cd {
                mismatch = true;
            }
            Some(cd)
        } else {
            None
        };
        let ds: Vec<i64> = tuple.iter().map(|&(d, _)| d as i64).collect();
        let ks: Vec<i64> = tuple.iter().map(|&(_, k)| k as i64).collect();
        let defective =
            defect::segre_veronese_defect(&ds, &ks).map_err(|e| Internal(e.to_string()))?;
        rows.push((tuple.clone(), dim, predicted_cd, direct_cd, defective));
    }
    if json {
        let values: Vec<Value> = rows
            .iter()
            .map(|(tuple, dim, predicted, direct, defective)| {
                json!({
                    "factors": tuple.iter().map(|&(d, k)| json!({"dilate": d, "simplex_dim": k})).collect::<Vec<_>>(),
                    "dim": dim,
                    "predicted_codegree": predicted,
                    "direct_codegree": direct,
                    "defective": defective,
                })
            })
            .collect();
        let out = json!({"family": "dilated-simplex", "rows": values});
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{:<24} {:>4} {:>12} {:>10} {:>10}",
            "factors", "dim", "predicted_cd", "direct_cd", "defective");
        for (tuple, dim, predicted, direct, defective) in &rows {
            let desc: Vec<String> =
                tuple.iter().map(|&(d, k)| format!("{d}*S_{k}")).collect();
            println!(
                "{:<24} {:>4} {:>12} {:>10} {:>10}",
                desc.join(" x "),
                dim,
                predicted,
                direct.map_or("-".to_string(), |c| c.to_string()),
                defective
            );
        }
    }
    Ok(if mismatch { 1 } else { 0 })
}

pub fn cmd_fuzz(
    kind: FuzzKind,
    dim: usize,
    bound: i64,
    count: usize,
    seed: u64,
    threads: usize,
    json: bool,
) -> Result<i32> {
    if dim == 0 || bound < 1 {
        bail!("fuzz needs dim >= 1 and bound >= 1");
    }
    let outcome = fuzz::run(kind, dim, bound, count, seed, threads);
    if json {
        let out = json!({
            "checked": outcome.checked,
            "seed": seed,
            "failures": outcome.failures,
            "findings": outcome.findings,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        for f in &outcome.failures {
            println!("FAIL {f}");
        }
        for f in &outcome.findings {
            println!("FINDING {f}");
        }
        println!(
            "checked {} instances (seed {seed}): {} failures, {} findings",
            outcome.checked,
            outcome.failures.len(),
            outcome.findings.len()
        );
    }
    Ok(if outcome.failures.is_empty() { 0 } else { 1 })
}
