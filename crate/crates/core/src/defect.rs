//! The alternating face-volume invariant `c`, the codegree criterion for
//! dual defect of smooth polytopes, the product and Segre–Veronese
//! criteria, and the vanishing identities that drive the proof, each
//! implemented as an independently checkable computation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::ehrhart;
use crate::error::{Error, Result};
use crate::identities::{FailureWitness, IdentityReport};
use crate::lattice::{binom, Int, Rat};
use crate::polytope::LatticePolytope;

/// Outcome of the codegree criterion on one polytope.
///
/// For smooth inputs the criterion is decisive: the codegree threshold
/// `2 cd >= n + 3` holds exactly when `c = 0`, and then the dual defect is
/// `2 cd - 2 - n`. For non-smooth inputs only the invariants are reported;
/// singular polytopes can be defective without meeting the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectVerdict {
    pub is_smooth: bool,
    pub dim: usize,
    pub codegree: usize,
    pub c_value: Int,
    /// Whether `2 * codegree >= dim + 3`.
    pub criterion_met: bool,
    /// Dual defect `2 * codegree - 2 - dim` for smooth inputs meeting the
    /// criterion; `0` otherwise.
    pub defect: usize,
    pub q_normal_note: String,
}

/// `c(P) = Σ_j (-1)^(n-j) (j+1) Σ_{dim F = j} Vol_Z(F)`, summed over the
/// whole face lattice (vertices through `P` itself), with each face volume
/// normalized against the saturated lattice of its affine hull.
pub fn c_invariant(p: &LatticePolytope) -> Result<Int> {
    let n = p.dim();
    let mut total = Int::zero();
    for (j, faces) in p.face_lattice().iter().enumerate() {
        let mut level = Int::zero();
        for face in faces {
            level += ehrhart::normalized_volume(&p.face_polytope(face))?;
        }
        let signed = Int::from(j as i64 + 1) * level;
        if (n - j) % 2 == 0 {
            total += signed;
        } else {
            total -= signed;
        }
    }
    Ok(total)
}

/// Runs the codegree criterion and cross-checks it against `c`.
///
/// For smooth inputs the two sides must agree; a mismatch is reported as an
/// internal inconsistency, since it would falsify the implementation.
pub fn defect_verdict(p: &LatticePolytope) -> Result<DefectVerdict> {
    let n = p.dim();
    let codegree = ehrhart::codegree(p)?;
    let c_value = c_invariant(p)?;
    let is_smooth = p.is_smooth();
    let criterion_met = 2 * codegree >= n + 3;
    if is_smooth && criterion_met != c_value.is_zero() {
        return Err(Error::Inconsistency(format!(
            "smooth polytope with codegree {codegree}, dim {n}: threshold test gives {criterion_met} but c = {c_value}"
        )));
    }
    let defect = if is_smooth && criterion_met {
        2 * codegree - 2 - n
    } else {
        0
    };
    let q_normal_note = if !is_smooth {
        String::from("criterion applies to smooth polytopes only; invariants reported without a defect claim")
    } else if criterion_met {
        format!(
            "dual defective with defect {defect}; the embedding is Q-normal and the nef value equals the Q-normality threshold, both {codegree}"
        )
    } else {
        String::from("not dual defective; codegree is below the (dim + 3) / 2 threshold")
    };
    Ok(DefectVerdict {
        is_smooth,
        dim: n,
        codegree,
        c_value,
        criterion_met,
        defect,
        q_normal_note,
    })
}

/// Defect criterion for a product of smooth polytopes:
/// `2 * max_i cd(P_i) >= Σ_i dim(P_i) + 3`.
pub fn product_defect_criterion(factors: &[LatticePolytope]) -> Result<bool> {
    if factors.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut dim_sum = 0;
    let mut max_cd = 0;
    for f in factors {
        if !f.is_smooth() {
            return Err(Error::NotSmooth);
        }
        dim_sum += f.dim();
        max_cd = max_cd.max(ehrhart::codegree(f)?);
    }
    Ok(2 * max_cd >= dim_sum + 3)
}

/// Defect criterion for `d_1 S_{k_1} × ... × d_r S_{k_r}`, evaluated both as
/// the codegree threshold `2 max_i ceil((k_i+1)/d_i) >= Σ k_j + 3` and as
/// the simplified condition `d_i = 1 and 2 k_i > Σ k_j` for some `i`. The
/// two forms are provably equivalent and both are computed as a guard.
pub fn segre_veronese_defect(d: &[i64], k: &[i64]) -> Result<bool> {
    if d.is_empty() || d.len() != k.len() {
        return Err(Error::OutOfDomain(format!(
            "need matching nonempty parameter lists, got {} dilations and {} dimensions",
            d.len(),
            k.len()
        )));
    }
    if d.iter().chain(k).any(|&x| x < 1) {
        return Err(Error::OutOfDomain(String::from(
            "all dilation factors and simplex dimensions must be >= 1",
        )));
    }
    let k_sum: i64 = k.iter().sum();
    let max_cd = d
        .iter()
        .zip(k)
        .map(|(&di, &ki)| (ki + di) / di) // ceil((k_i + 1) / d_i)
        .max()
        .unwrap();
    let threshold = 2 * max_cd >= k_sum + 3;
    let simplified = d.iter().zip(k).any(|(&di, &ki)| di == 1 && 2 * ki > k_sum);
    if threshold != simplified {
        return Err(Error::Inconsistency(format!(
            "codegree threshold gives {threshold}, simplified condition gives {simplified}"
        )));
    }
    Ok(threshold)
}

/// Closed form for `c(S_{k1} × S_{k2})`:
/// `Σ_{i,j} (-1)^(k1+k2-i-j) (i+j-1) binom(k1+1,i) binom(k2+1,j) binom(i+j-2,i-1)`.
pub fn c_segre_closed(k1: i64, k2: i64) -> Result<Int> {
    if k1 < 1 || k2 < 1 {
        return Err(Error::OutOfDomain(format!(
            "need k1, k2 >= 1, got k1={k1}, k2={k2}"
        )));
    }
    let mut total = Int::zero();
    for i in 1..=k1 + 1 {
        for j in 1..=k2 + 1 {
            let term = Int::from(i + j - 1)
                * binom(k1 + 1, i)
                * binom(k2 + 1, j)
                * binom(i + j - 2, i - 1);
            if (k1 + k2 - i - j) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}

/// The master expression
/// `Σ_{p=d+1}^n Σ_{i=1}^{p-d} (-1)^(d-i) i binom(p+1, p-d-i) Σ_{dim G = p} |(iG)° ∩ Z^n|`
/// with `d = degree(P)` and `n = dim(P)`, evaluated from relative-interior
/// counts of the faces. It vanishes for every lattice polytope with
/// `d < n`, because every inner count is zero by degree monotonicity of
/// faces.
pub fn expr_proof_value(p: &LatticePolytope) -> Result<Int> {
    let n = p.dim();
    let d = ehrhart::degree(p)?;
    if d == n {
        return Err(Error::OutOfDomain(String::from(
            "expression undefined (empty outer sum range is the d = n degenerate case)",
        )));
    }
    let lattice = p.face_lattice();
    let mut total = Int::zero();
    for pp in d + 1..=n {
        for i in 1..=(pp - d) {
            let mut level = Int::zero();
            for face in &lattice[pp] {
                level += ehrhart::count_interior(&p.face_polytope(face), i as u32);
            }
            let term = Int::from(i as i64) * binom(pp as i64 + 1, (pp - d - i) as i64) * level;
            if (d as i64 - i as i64).rem_euclid(2) == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}

/// Which of the two degree regimes of the vanishing identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeRegime {
    /// `degree < dim - degree`: the invariant `c` itself must vanish.
    LowDegree,
    /// `degree >= dim - degree`: the h*-weighted face sum must vanish.
    HighDegree,
}

/// Checks the vanishing identity for a simple polytope with
/// `degree < dim`, in the regime selected by `regime`.
///
/// Low degree: `c(P) = 0`. High degree:
/// `Σ_j (-1)^j Σ_{dim F = j} [(n-d) h*_{n-d}(F) + (j+1) Σ_{k<n-d} h*_k(F)] = 0`.
/// Both are additionally required to coincide with the master expression,
/// which the proof shows they equal.
pub fn simple_degree_identity(
    p: &LatticePolytope,
    regime: DegreeRegime,
) -> Result<IdentityReport> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = p.dim();
    let d = ehrhart::degree(p)?;
    if d >= n {
        return Err(Error::OutOfDomain(format!(
            "identity needs degree < dim, got degree {d} in dimension {n}"
        )));
    }
    let a = n - d;
    match regime {
        DegreeRegime::LowDegree if d >= a => {
            return Err(Error::OutOfDomain(format!(
                "low-degree regime needs degree < dim - degree, got degree {d}, dim {n}"
            )));
        }
        DegreeRegime::HighDegree if d < a => {
            return Err(Error::OutOfDomain(format!(
                "high-degree regime needs degree >= dim - degree, got degree {d}, dim {n}"
            )));
        }
        _ => {}
    }
    let value = match regime {
        DegreeRegime::LowDegree => c_invariant(p)?,
        DegreeRegime::HighDegree => {
            let mut total = Int::zero();
            for (j, faces) in p.face_lattice().iter().enumerate() {
                let mut level = Int::zero();
                for face in faces {
                    let h = ehrhart::h_star(&p.face_polytope(face))?;
                    let top = h.get(a).cloned().unwrap_or_else(Int::zero);
                    let low: Int = h.iter().take(a.min(h.len())).sum();
                    level += Int::from(a as i64) * top + Int::from(j as i64 + 1) * low;
                }
                if j % 2 == 0 {
                    total += level;
                } else {
                    total -= level;
                }
            }
            total
        }
    };
    let master = expr_proof_value(p)?;
    let name = match regime {
        DegreeRegime::LowDegree => "low-degree vanishing (c = 0)",
        DegreeRegime::HighDegree => "high-degree vanishing (h*-weighted face sum)",
    };
    let params = format!("dim {n}, degree {d}");
    let passed = value.is_zero() && master.is_zero();
    Ok(IdentityReport {
        identity_name: String::from(name),
        parameters: params,
        passed,
        first_failure: if passed {
            None
        } else {
            Some(FailureWitness {
                parameters: alloc::vec![
                    (String::from("dim"), n as i64),
                    (String::from("degree"), d as i64),
                ],
                lhs: Rat::from(value),
                rhs: Rat::from(master),
            })
        },
    })
}

/// For a simple polytope, the alternating face sums
/// `Σ_j (-1)^(n-j) Σ_{dim F = j} |kF ∩ Z^n|` for `k = 1 .. ceil((n+1)/2)`.
/// Each sum equals `|(kP)° ∩ Z^n|`; below the codegree they are all zero.
pub fn vanishing_equations(p: &LatticePolytope) -> Result<Vec<Int>> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = p.dim();
    let k_max = (n + 2) / 2; // ceil((n + 1) / 2)
    let lattice = p.face_lattice();
    let mut sums = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut total = Int::zero();
        for (j, faces) in lattice.iter().enumerate() {
            let mut level = Int::zero();
            for face in faces {
                level += ehrhart::count_points(&p.face_polytope(face), k as u32);
            }
            if (n - j) % 2 == 0 {
                total += level;
            } else {
                total -= level;
            }
        }
        sums.push(total);
    }
    Ok(sums)
}
