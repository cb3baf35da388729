//! Lattice-point counting in dilates, Ehrhart interpolation, h*-vectors,
//! normalized volume, degree, and codegree.
//!
//! Counting iterates lattice points of the affine hull through the
//! saturated chart, pruning coordinate ranges with the facet inequalities;
//! the arithmetic runs in `i128` whenever a conservative bound proves this
//! safe, and in big integers otherwise.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{binom, Int, Rat};
use crate::polytope::LatticePolytope;

/// Ehrhart data of a single polytope (or face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartProfile {
    pub dim: usize,
    /// Coefficients of `ehr_P`, constant term first; length `dim + 1`.
    pub ehr_coeffs: Vec<Rat>,
    /// h*-vector, length `dim + 1` with trailing zeros kept.
    pub h_star: Vec<Int>,
    pub normalized_volume: Int,
    pub degree: usize,
    pub codegree: usize,
}

/// `|kP ∩ Z^n|` for `k >= 0`; the empty dilate `0P` is a point.
pub fn count_points(p: &LatticePolytope, k: u32) -> Int {
    if k == 0 || p.dim() == 0 {
        return Int::one();
    }
    count_dilate(p, k, false)
}

/// Lattice points strictly inside `kP` relative to its affine hull, `k >= 1`.
pub fn count_interior(p: &LatticePolytope, k: u32) -> Int {
    assert!(k >= 1, "interior counting needs k >= 1");
    if p.dim() == 0 {
        return Int::one();
    }
    count_dilate(p, k, true)
}

/// The lattice points of `P` itself, in ambient coordinates.
pub fn lattice_points(p: &LatticePolytope) -> Vec<Vec<Int>> {
    if p.dim() == 0 {
        return vec![p.vertices()[0].clone()];
    }
    let data = CountData::<Int>::build(p, 1, false);
    let mut chart_pts = Vec::new();
    data.collect(0, &mut vec![Int::zero(); data.facets.len()], &mut Vec::new(), &mut chart_pts);
    chart_pts.sort();
    chart_pts.iter().map(|y| p.chart().point(y)).collect()
}

fn count_dilate(p: &LatticePolytope, k: u32, strict: bool) -> Int {
    if fits_i128(p, k) {
        let data = CountData::<i128>::build(p, k, strict);
        Int::from(data.count(0, &mut vec![0i128; data.facets.len()]))
    } else {
        let data = CountData::<Int>::build(p, k, strict);
        data.count(0, &mut vec![Int::zero(); data.facets.len()])
    }
}

fn fits_i128(p: &LatticePolytope, k: u32) -> bool {
    let k = Int::from(k);
    let mut worst = Int::one();
    for f in p.facets() {
        let mut s = f.offset.abs();
        for (u, t) in f.normal.iter().zip(coordinate_ranges(p)) {
            s += u.abs() * t;
        }
        if s > worst {
            worst = s;
        }
    }
    worst * k * Int::from(8) < Int::from(i128::MAX)
}

fn coordinate_ranges(p: &LatticePolytope) -> impl Iterator<Item = Int> + '_ {
    (0..p.dim()).map(|t| {
        p.chart_vertices()
            .iter()
            .map(|v| v[t].abs())
            .max()
            .unwrap_or_else(Int::zero)
    })
}

trait CountInt: Integer + Signed + Clone {
    fn from_int(v: &Int) -> Self;
    fn into_int(self) -> Int;
}

impl CountInt for i128 {
    fn from_int(v: &Int) -> Self {
        v.to_i128().expect("value fits i128 by the fast-path bound")
    }
    fn into_int(self) -> Int {
        Int::from(self)
    }
}

impl CountInt for Int {
    fn from_int(v: &Int) -> Self {
        v.clone()
    }
    fn into_int(self) -> Int {
        self
    }
}

struct CountData<T> {
    r: usize,
    /// Per facet: (normal, right-hand side for `normal . y >= rhs`).
    facets: Vec<(Vec<T>, T)>,
    lo: Vec<T>,
    hi: Vec<T>,
    /// tails[f][t] = max possible contribution of coordinates past t.
    tails: Vec<Vec<T>>,
}

impl<T: CountInt> CountData<T> {
    fn build(p: &LatticePolytope, k: u32, strict: bool) -> Self {
        let r = p.dim();
        let k_t = T::from_int(&Int::from(k));
        let facets: Vec<(Vec<T>, T)> = p
            .facets()
            .iter()
            .map(|f| {
                let u: Vec<T> = f.normal.iter().map(T::from_int).collect();
                let mut rhs = T::from_int(&f.offset) * k_t.clone();
                if strict {
                    rhs = rhs + T::one();
                }
                (u, rhs)
            })
            .collect();
        let mut lo = Vec::with_capacity(r);
        let mut hi = Vec::with_capacity(r);
        for t in 0..r {
            let coords: Vec<T> =
                p.chart_vertices().iter().map(|v| T::from_int(&v[t])).collect();
            lo.push(coords.iter().min().unwrap().clone() * k_t.clone());
            hi.push(coords.iter().max().unwrap().clone() * k_t.clone());
        }
        let tails = facets
            .iter()
            .map(|(u, _)| {
                let mut tail = vec![T::zero(); r];
                for t in (0..r.saturating_sub(1)).rev() {
                    let s = t + 1;
                    let a = u[s].clone() * lo[s].clone();
                    let b = u[s].clone() * hi[s].clone();
                    tail[t] = tail[s].clone() + a.max(b);
                }
                tail
            })
            .collect();
        CountData { r, facets, lo, hi, tails }
    }

    /// Feasible range for coordinate `t` given the partial facet dot
    /// products of the fixed prefix; `None` when the branch is infeasible.
    fn level_range(&self, t: usize, partials: &[T]) -> Option<(T, T)> {
        let mut lo = self.lo[t].clone();
        let mut hi = self.hi[t].clone();
        for (f, (u, rhs)) in self.facets.iter().enumerate() {
            let c_rem = rhs.clone() - partials[f].clone() - self.tails[f][t].clone();
            let ut = &u[t];
            if ut.is_positive() {
                let b = Integer::div_ceil(&c_rem, ut);
                if b > lo {
                    lo = b;
                }
            } else if ut.is_negative() {
                let b = Integer::div_floor(&c_rem, ut);
                if b < hi {
                    hi = b;
                }
            } else if c_rem.is_positive() {
                return None;
            }
        }
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    fn count(&self, t: usize, partials: &mut Vec<T>) -> T {
        let Some((lo, hi)) = self.level_range(t, partials) else {
            return T::zero();
        };
        if t + 1 == self.r {
            return hi - lo + T::one();
        }
        let mut local: Vec<T> = self
            .facets
            .iter()
            .enumerate()
            .map(|(f, (u, _))| partials[f].clone() + u[t].clone() * lo.clone())
            .collect();
        let mut total = T::zero();
        let mut x = lo;
        loop {
            total = total + self.count(t + 1, &mut local);
            if x == hi {
                break;
            }
            x = x + T::one();
            for (f, (u, _)) in self.facets.iter().enumerate() {
                local[f] = local[f].clone() + u[t].clone();
            }
        }
        total
    }

    fn collect(
        &self,
        t: usize,
        partials: &mut Vec<T>,
        prefix: &mut Vec<T>,
        out: &mut Vec<Vec<Int>>,
    ) {
        let Some((lo, hi)) = self.level_range(t, partials) else {
            return;
        };
        let mut local: Vec<T> = self
            .facets
            .iter()
            .enumerate()
            .map(|(f, (u, _))| partials[f].clone() + u[t].clone() * lo.clone())
            .collect();
        let mut x = lo;
        loop {
            prefix.push(x.clone());
            if t + 1 == self.r {
                out.push(prefix.iter().map(|c| c.clone().into_int()).collect());
            } else {
                self.collect(t + 1, &mut local, prefix, out);
            }
            prefix.pop();
            if x == hi {
                break;
            }
            x = x + T::one();
            for (f, (u, _)) in self.facets.iter().enumerate() {
                local[f] = local[f].clone() + u[t].clone();
            }
        }
    }
}

/// The unique degree-`dim` polynomial interpolating the dilate counts, with
/// an extra validation node at `dim + 1`. Constant term first.
pub fn ehrhart_polynomial(p: &LatticePolytope) -> Result<Vec<Rat>> {
    let r = p.dim();
    let counts: Vec<Int> = (0..=r as u32 + 1).map(|k| count_points(p, k)).collect();
    let coeffs = interpolate(&counts[..=r]);
    let check = eval_poly(&coeffs, &Int::from(r as i64 + 1));
    if check != Rat::from(counts[r + 1].clone()) {
        return Err(Error::Inconsistency(format!(
            "Ehrhart interpolation failed validation at k={}: predicted {check}, counted {}",
            r + 1,
            counts[r + 1]
        )));
    }
    Ok(coeffs)
}

/// Newton forward-difference interpolation at nodes `0, 1, ..., len-1`.
fn interpolate(values: &[Int]) -> Vec<Rat> {
    let n = values.len();
    // Forward differences at 0.
    let mut diffs: Vec<Rat> = values.iter().map(|v| Rat::from(v.clone())).collect();
    let mut deltas = Vec::with_capacity(n);
    for m in 0..n {
        deltas.push(diffs[0].clone());
        for i in 0..n - m - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // Accumulate deltas[m] * binom(t, m) in the monomial basis.
    let mut coeffs = vec![Rat::zero(); n];
    let mut basis = vec![Rat::one()]; // binom(t, 0)
    for (m, delta) in deltas.iter().enumerate() {
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += delta * b;
        }
        // basis *= (t - m) / (m + 1)
        let mut next = vec![Rat::zero(); basis.len() + 1];
        let shift = Rat::from(Int::from(m as i64));
        let scale = Rat::from(Int::from(m as i64 + 1));
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &scale;
            next[i] -= b * &shift / &scale;
        }
        basis = next;
    }
    coeffs
}

/// Evaluates a rational polynomial (constant term first) at an integer.
pub fn eval_poly(coeffs: &[Rat], t: &Int) -> Rat {
    let t = Rat::from(t.clone());
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &t + c;
    }
    acc
}

/// h*-vector by the alternating-sum inversion of the binomial-basis
/// expansion: `h*_k = sum_i (-1)^(k-i) binom(n+1, k-i) ehr_P(i)`.
pub fn h_star(p: &LatticePolytope) -> Result<Vec<Int>> {
    let n = p.dim();
    let counts: Vec<Int> = (0..=n as u32).map(|k| count_points(p, k)).collect();
    let mut h = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut hk = Int::zero();
        for (i, c) in counts.iter().enumerate().take(k + 1) {
            let term = binom(n as i64 + 1, (k - i) as i64) * c;
            if (k - i) % 2 == 0 {
                hk += term;
            } else {
                hk -= term;
            }
        }
        if hk.is_negative() {
            return Err(Error::Inconsistency(format!(
                "negative h*_{k} = {hk} (counting bug)"
            )));
        }
        h.push(hk);
    }
    if h[0] != Int::one() {
        return Err(Error::Inconsistency("h*_0 != 1".to_string()));
    }
    Ok(h)
}

/// Full Ehrhart profile with every cross-check enforced.
pub fn ehrhart_profile(p: &LatticePolytope) -> Result<EhrhartProfile> {
    let n = p.dim();
    let ehr_coeffs = ehrhart_polynomial(p)?;
    let h = h_star(p)?;
    let volume: Int = h.iter().sum();
    // dim! * leading coefficient must reproduce the h* sum.
    let mut fact = Int::one();
    for i in 1..=n as i64 {
        fact *= Int::from(i);
    }
    let lead_vol = Rat::from(fact) * &ehr_coeffs[n];
    if !lead_vol.is_integer() || lead_vol.to_integer() != volume {
        return Err(Error::Inconsistency(format!(
            "normalized volume mismatch: dim! * lead = {lead_vol}, sum h* = {volume}"
        )));
    }
    let degree = (0..=n).rev().find(|&k| !h[k].is_zero()).expect("h*_0 = 1");
    // Codegree directly, as the first dilate with an interior point.
    let codegree = (1..=n as u32 + 1)
        .find(|&k| count_interior(p, k) > Int::zero())
        .ok_or_else(|| {
            Error::Inconsistency("no interior point up to dilate dim + 1".to_string())
        })?;
    if codegree as usize != n + 1 - degree {
        return Err(Error::Inconsistency(format!(
            "codegree {codegree} disagrees with dim + 1 - degree = {}",
            n + 1 - degree
        )));
    }
    Ok(EhrhartProfile {
        dim: n,
        ehr_coeffs,
        h_star: h,
        normalized_volume: volume,
        degree,
        codegree: codegree as usize,
    })
}

pub fn degree(p: &LatticePolytope) -> Result<usize> {
    Ok(ehrhart_profile(p)?.degree)
}

pub fn codegree(p: &LatticePolytope) -> Result<usize> {
    Ok(ehrhart_profile(p)?.codegree)
}

/// Normalized volume against the saturated lattice of the affine hull.
pub fn normalized_volume(p: &LatticePolytope) -> Result<Int> {
    Ok(ehrhart_profile(p)?.normalized_volume)
}

/// Ehrhart reciprocity at a single dilate: `(-1)^n ehr_P(-k)` must equal
/// the interior count of `kP`.
pub fn reciprocity_check(p: &LatticePolytope, k: u32) -> Result<bool> {
    assert!(k >= 1);
    let coeffs = ehrhart_polynomial(p)?;
    let val = eval_poly(&coeffs, &Int::from(-(k as i64)));
    let signed = if p.dim() % 2 == 0 { val } else { -val };
    Ok(signed == Rat::from(count_interior(p, k)))
}
