//! Seeded randomized checking of the library invariants.
//!
//! Every instance is generated from `(seed, index)` on its own RNG stream,
//! so results are reproducible and independent of the worker count.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polydefect_core::polytope::build::simplex;
use polydefect_core::{defect, ehrhart, simplex_box, Int, LatticePolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzKind {
    /// Random lattice simplices with bounded coordinates.
    Simplex,
    /// Products of dilated unimodular simplices (always simple and smooth).
    Simple,
}

#[derive(Debug, Default)]
pub struct FuzzOutcome {
    pub checked: usize,
    /// Invariant violations; any entry is a bug.
    pub failures: Vec<String>,
    /// Observations worth reporting that are not violations (e.g. a negative
    /// `c` on a non-simplex would be a counterexample to an open question).
    pub findings: Vec<String>,
}

pub fn run(
    kind: FuzzKind,
    dim: usize,
    bound: i64,
    count: usize,
    seed: u64,
    threads: usize,
) -> FuzzOutcome {
    let threads = threads.max(1).min(count.max(1));
    let mut slots: Vec<(Vec<String>, Vec<String>)> = Vec::with_capacity(count);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    let mut results = Vec::new();
                    let mut idx = t;
                    while idx < count {
                        results.push((idx, check_instance(kind, dim, bound, seed, idx)));
                        idx += threads;
                    }
                    results
                })
            })
            .collect();
        let mut all: Vec<(usize, (Vec<String>, Vec<String>))> = handles
            .into_iter()
            .flat_map(|h| h.join().expect("fuzz worker panicked"))
            .collect();
        all.sort_by_key(|(i, _)| *i);
        slots.extend(all.into_iter().map(|(_, r)| r));
    });
    let mut outcome = FuzzOutcome {
        checked: count,
        ..FuzzOutcome::default()
    };
    for (failures, findings) in slots {
        outcome.failures.extend(failures);
        outcome.findings.extend(findings);
    }
    outcome
}

fn check_instance(
    kind: FuzzKind,
    dim: usize,
    bound: i64,
    seed: u64,
    index: usize,
) -> (Vec<String>, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    let p = match kind {
        FuzzKind::Simplex => random_simplex(&mut rng, dim, bound),
        FuzzKind::Simple => random_simple(&mut rng, dim, bound),
    };
    let mut failures = Vec::new();
    let mut findings = Vec::new();
    let reproducer = describe(&p, seed, index);
    if let Err(msg) = battery(&p, kind, &mut findings) {
        failures.push(format!("{msg} [{reproducer}]"));
    }
    (failures, findings)
}

fn random_simplex(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> LatticePolytope {
    loop {
        let pts: Vec<Vec<Int>> = (0..=dim)
            .map(|_| (0..dim).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if let Ok(p) = LatticePolytope::from_vertices(dim, &pts) {
            if p.dim() == dim && p.is_simplex() {
                return p;
            }
        }
    }
}

/// A random product of dilated unimodular simplices of total dimension
/// `dim`; such products are always simple.
fn random_simple(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> LatticePolytope {
    let max_dilate = bound.max(1) as u32;
    let mut remaining = dim;
    let mut product: Option<LatticePolytope> = None;
    while remaining > 0 {
        let k = rng.gen_range(1..=remaining);
        let d = rng.gen_range(1..=max_dilate);
        let factor = simplex(k).dilate(d).expect("dilating a simplex");
        product = Some(match product {
            None => factor,
            Some(acc) => acc.product(&factor),
        });
        remaining -= k;
    }
    product.expect("dim >= 1")
}

fn battery(
    p: &LatticePolytope,
    kind: FuzzKind,
    findings: &mut Vec<String>,
) -> Result<(), String> {
    let n = p.dim();
    let profile =
        ehrhart::ehrhart_profile(p).map_err(|e| format!("profile failed: {e}"))?;
    if profile.h_star[0] != Int::from(1) {
        return Err("h*_0 != 1".into());
    }
    if profile.h_star.iter().any(|h| h.is_negative()) {
        return Err("negative h* entry".into());
    }
    let total: Int = profile.h_star.iter().sum();
    if total != profile.normalized_volume {
        return Err("sum of h* differs from normalized volume".into());
    }
    if profile.degree + profile.codegree != n + 1 {
        return Err("degree + codegree != dim + 1".into());
    }
    for k in 1..=(n as u32 + 2) {
        if !ehrhart::reciprocity_check(p, k).map_err(|e| format!("reciprocity: {e}"))? {
            return Err(format!("reciprocity fails at k = {k}"));
        }
    }
    // Monotonicity of h* along faces.
    for faces in p.face_lattice() {
        for face in faces {
            let fp = p.face_polytope(face);
            let h = ehrhart::h_star(&fp).map_err(|e| format!("face h*: {e}"))?;
            for (k, hk) in h.iter().enumerate() {
                let big = profile.h_star.get(k).cloned().unwrap_or_else(Int::zero);
                if hk > &big {
                    return Err(format!("face h*_{k} exceeds polytope h*_{k}"));
                }
            }
        }
    }
    if profile.degree < n {
        let value = defect::expr_proof_value(p).map_err(|e| format!("master expr: {e}"))?;
        if !value.is_zero() {
            return Err(format!("master expression is {value}, expected 0"));
        }
    }
    let c = defect::c_invariant(p).map_err(|e| format!("c invariant: {e}"))?;
    match kind {
        FuzzKind::Simplex => {
            let via_box =
                simplex_box::c_from_box(p).map_err(|e| format!("box points: {e}"))?;
            if via_box != c {
                return Err(format!("c mismatch: box route {via_box}, face route {c}"));
            }
            if c.is_negative() {
                return Err(format!("negative c = {c} on a simplex"));
            }
            let bound_report =
                simplex_box::support_bound_check(p).map_err(|e| format!("support bound: {e}"))?;
            if !bound_report.passed {
                return Err("box-point support bound violated".into());
            }
        }
        FuzzKind::Simple => {
            if c.is_negative() {
                // Would answer an open question; record, do not fail.
                findings.push(format!("negative c = {c} on a non-simplex instance"));
            }
            let sums = defect::vanishing_equations(p)
                .map_err(|e| format!("vanishing sums: {e}"))?;
            for (idx, sum) in sums.iter().enumerate() {
                let k = idx as u32 + 1;
                if sum != &ehrhart::count_interior(p, k) {
                    return Err(format!("face sum at k = {k} differs from interior count"));
                }
            }
            if profile.degree < n {
                let d = profile.degree;
                let regime = if d < n - d {
                    defect::DegreeRegime::LowDegree
                } else {
                    defect::DegreeRegime::HighDegree
                };
                let report = defect::simple_degree_identity(p, regime)
                    .map_err(|e| format!("degree identity: {e}"))?;
                if !report.passed {
                    return Err(format!("degree identity failed: {:?}", report.first_failure));
                }
            }
        }
    }
    Ok(())
}

fn describe(p: &LatticePolytope, seed: u64, index: usize) -> String {
    let mut s = format!("seed {seed}, instance {index}, vertices ");
    for (i, v) in p.vertices().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "({})", v.iter().map(Int::to_string).collect::<Vec<_>>().join(","));
    }
    s
}
