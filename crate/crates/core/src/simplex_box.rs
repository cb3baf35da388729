//! Lattice points of the half-open parallelepiped spanned by the lifted
//! vertices of a lattice simplex. These "box points" give an independent
//! route to the h*-vector and a closed form for the face-volume alternating
//! sum `c`, via the support statistics `s_I`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::identities::{FailureWitness, IdentityReport};
use crate::lattice::{binom, smith_normal_form, Int, IntMatrix, Rat};
use crate::polytope::LatticePolytope;

/// One lattice point `x = Σ λ_i (v_i, 1)` of the half-open parallelepiped,
/// with all `0 <= λ_i < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPoint {
    /// The point itself, in `Z^{n+1}` (lifted chart coordinates).
    pub point: Vec<Int>,
    /// The exact barycentric-style coefficients `λ_i`.
    pub lambda: Vec<Rat>,
    /// Indices `i` with `λ_i != 0`.
    pub support: BTreeSet<usize>,
    /// Last coordinate `Σ λ_i`, always a nonnegative integer.
    pub height: usize,
}

/// Full enumeration of the box points of a simplex, with the derived
/// support counts and height histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPointProfile {
    /// Dimension of the simplex.
    pub n: usize,
    pub points: Vec<BoxPoint>,
    /// `s_I` = number of box points with support exactly `I`; the empty
    /// support contributes `s_∅ = 1` (the origin).
    pub s: BTreeMap<BTreeSet<usize>, Int>,
    /// Heights histogram; equals the h*-vector of the simplex.
    pub h_star_from_heights: Vec<Int>,
}

/// Enumerates the box points of a lattice simplex.
///
/// The simplex is moved to a full-dimensional model in its affine-hull
/// chart, its vertices are lifted to height one, and the quotient of
/// `Z^{n+1}` by the lattice spanned by the lifted vertices is enumerated
/// through the Smith normal form of the vertex matrix. Each residue class
/// contains exactly one point of the half-open parallelepiped, so the
/// enumeration is complete and duplicate-free, with `Vol_Z` points total.
pub fn box_points(p: &LatticePolytope) -> Result<BoxPointProfile> {
    if !p.is_simplex() {
        return Err(Error::NotSimplex);
    }
    let n = p.dim();
    // Columns b_i = (w_i, 1) for the chart vertices w_i.
    let lifted: Vec<Vec<Int>> = p
        .chart_vertices()
        .iter()
        .map(|w| {
            let mut b = w.clone();
            b.push(Int::one());
            b
        })
        .collect();
    let m = IntMatrix::from_cols(&lifted);
    let (s_mat, _u, v) = smith_normal_form(&m);
    let divisors: Vec<u64> = (0..=n)
        .map(|i| {
            s_mat[(i, i)]
                .to_u64()
                .filter(|&d| d > 0)
                .ok_or(Error::OutOfDomain(format!(
                    "elementary divisor {} too large to enumerate",
                    s_mat[(i, i)]
                )))
        })
        .collect::<Result<_>>()?;
    let volume: u64 = divisors.iter().product();

    let mut points = Vec::with_capacity(volume as usize);
    let mut s: BTreeMap<BTreeSet<usize>, Int> = BTreeMap::new();
    let mut h_star = vec![Int::zero(); n + 1];

    // Odometer over the residue tuples r, 0 <= r_i < d_i.
    let mut r = vec![0u64; n + 1];
    loop {
        // λ = V · diag(1/d_i) · r, reduced into [0, 1) coordinatewise.
        let lambda: Vec<Rat> = (0..=n)
            .map(|row| {
                let raw: Rat = (0..=n)
                    .map(|i| {
                        Rat::new(&v[(row, i)] * Int::from(r[i]), Int::from(divisors[i]))
                    })
                    .sum();
                &raw - raw.floor()
            })
            .collect();
        let mut point = vec![Rat::zero(); n + 1];
        for (i, b) in lifted.iter().enumerate() {
            for (j, c) in b.iter().enumerate() {
                point[j] += &lambda[i] * Rat::from(c.clone());
            }
        }
        let point: Vec<Int> = point
            .into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        let support: BTreeSet<usize> =
            (0..=n).filter(|&i| !lambda[i].is_zero()).collect();
        let height = point[n].to_usize().expect("height in 0..=n");
        debug_assert!(height <= n);
        h_star[height] += 1;
        *s.entry(support.clone()).or_insert_with(Int::zero) += 1;
        points.push(BoxPoint {
            point,
            lambda,
            support,
            height,
        });

        let mut pos = 0;
        loop {
            if pos > n {
                break;
            }
            r[pos] += 1;
            if r[pos] < divisors[pos] {
                break;
            }
            r[pos] = 0;
            pos += 1;
        }
        if pos > n {
            break;
        }
    }

    if points.len() as u64 != volume {
        return Err(Error::Inconsistency(format!(
            "enumerated {} box points, group order is {volume}",
            points.len()
        )));
    }
    Ok(BoxPointProfile {
        n,
        points,
        s,
        h_star_from_heights: h_star,
    })
}

/// The closed form `c = Σ_I binom(|I|, n) s_I` for a lattice simplex.
///
/// Only supports of size `n` or `n + 1` contribute, so this equals
/// `(n+1) s_[n+1] + Σ_{|I|=n} s_I` and is manifestly nonnegative.
pub fn c_from_box(p: &LatticePolytope) -> Result<Int> {
    let profile = box_points(p)?;
    let n = profile.n as i64;
    let mut total = Int::zero();
    for (support, count) in &profile.s {
        total += binom(support.len() as i64, n) * count;
    }
    Ok(total)
}

/// Checks the support-size bound: `s_I = 0` whenever `|I| > 2 deg(P)`.
/// Since the enumeration only records nonempty counts, this verifies that
/// no box point has a support larger than twice the Ehrhart degree.
pub fn support_bound_check(p: &LatticePolytope) -> Result<IdentityReport> {
    let profile = box_points(p)?;
    let degree = profile
        .h_star_from_heights
        .iter()
        .rposition(|h| !h.is_zero())
        .unwrap_or(0);
    let name = "box-point support bound";
    let params = format!("dim {} simplex, degree {degree}", profile.n);
    for (support, count) in &profile.s {
        if support.len() > 2 * degree && count.is_positive() {
            return Ok(IdentityReport {
                identity_name: String::from(name),
                parameters: params,
                passed: false,
                first_failure: Some(FailureWitness {
                    parameters: vec![
                        (String::from("support_size"), support.len() as i64),
                        (String::from("degree"), degree as i64),
                    ],
                    lhs: Rat::from(count.clone()),
                    rhs: Rat::zero(),
                }),
            });
        }
    }
    Ok(IdentityReport {
        identity_name: String::from(name),
        parameters: params,
        passed: true,
        first_failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart;
    use crate::polytope::build::simplex;

    fn poly(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<Vec<Int>> = pts
            .iter()
            .map(|p| p.iter().map(|&x| Int::from(x)).collect())
            .collect();
        LatticePolytope::from_vertices(dim, &pts).unwrap()
    }

    fn quartic_simplex() -> LatticePolytope {
        poly(
            4,
            &[
                &[0, 0, 0, 1],
                &[1, 0, 0, 1],
                &[0, 1, 0, 1],
                &[1, 1, 2, 1],
                &[-1, -1, -1, -2],
            ],
        )
    }

    #[test]
    fn unimodular_simplex_has_only_origin() {
        for n in 1..=5 {
            let profile = box_points(&simplex(n)).unwrap();
            assert_eq!(profile.points.len(), 1);
            assert!(profile.points[0].support.is_empty());
            assert_eq!(profile.points[0].height, 0);
            assert_eq!(c_from_box(&simplex(n)).unwrap(), Int::zero());
        }
    }

    #[test]
    fn doubled_triangle_profile() {
        let p = poly(2, &[&[0, 0], &[2, 0], &[0, 2]]);
        let profile = box_points(&p).unwrap();
        assert_eq!(profile.points.len(), 4);
        let expected: Vec<Int> = [1, 3, 0].iter().map(|&h| Int::from(h)).collect();
        assert_eq!(profile.h_star_from_heights, expected);
        // Origin plus the three midpoints of the edges.
        assert_eq!(profile.s[&BTreeSet::new()], Int::one());
        let pairs: Int = profile
            .s
            .iter()
            .filter(|(i, _)| i.len() == 2)
            .map(|(_, c)| c.clone())
            .sum();
        assert_eq!(pairs, Int::from(3));
        assert_eq!(c_from_box(&p).unwrap(), Int::from(3));
    }

    #[test]
    fn heights_match_ehrhart_h_star() {
        let cases = [
            poly(2, &[&[0, 0], &[3, 0], &[0, 3]]),
            poly(3, &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]),
            quartic_simplex(),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 5]]),
        ];
        for p in &cases {
            let profile = box_points(p).unwrap();
            assert_eq!(profile.h_star_from_heights, ehrhart::h_star(p).unwrap());
            let total: Int = profile.s.values().sum();
            assert_eq!(total, ehrhart::normalized_volume(p).unwrap());
        }
    }

    #[test]
    fn quartic_simplex_c_value() {
        assert_eq!(c_from_box(&quartic_simplex()).unwrap(), Int::from(21));
    }

    #[test]
    fn non_simplex_rejected() {
        let square = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(box_points(&square), Err(Error::NotSimplex));
    }

    #[test]
    fn support_bound_holds_on_examples() {
        let cases = [
            simplex(4),
            poly(2, &[&[0, 0], &[2, 0], &[0, 2]]),
            quartic_simplex(),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 7]]),
        ];
        for p in &cases {
            assert!(support_bound_check(&p).unwrap().passed);
        }
    }
}
