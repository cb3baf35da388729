//! Lattice polytopes from integer vertex lists: facet enumeration, face
//! lattice, simplicity and smoothness tests, and the standard constructors
//! (dilate, product, pyramid, Cayley sum).
//!
//! Polytopes need not be full-dimensional in their ambient lattice; every
//! lattice-sensitive operation routes through the saturated chart of the
//! affine hull.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::lattice::{self, AffineLatticeChart, Int, IntMatrix, Rat};

/// A facet of a polytope, in chart coordinates of the affine hull.
///
/// The inequality `normal · y >= offset` holds for every point of the
/// polytope, with equality exactly on the facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Int,
    pub vertex_set: BTreeSet<usize>,
}

/// A face, stored as the set of vertices lying on it plus its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertex_indices: BTreeSet<usize>,
    pub dim: usize,
}

/// A lattice polytope given by its vertices. Immutable after construction;
/// the face lattice is computed once on first use.
#[derive(Debug)]
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Int>>,
    chart: AffineLatticeChart,
    chart_vertices: Vec<Vec<Int>>,
    facets: Vec<Facet>,
    face_lattice: OnceBox<Vec<Vec<Face>>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        LatticePolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            chart: self.chart.clone(),
            chart_vertices: self.chart_vertices.clone(),
            facets: self.facets.clone(),
            face_lattice: OnceBox::new(),
        }
    }
}

impl LatticePolytope {
    /// Convex hull of the given lattice points. Duplicates and non-extreme
    /// points are removed.
    pub fn from_vertices(ambient_dim: usize, points: &[Vec<Int>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: p.len() });
            }
        }
        let mut seen = BTreeSet::new();
        let points: Vec<Vec<Int>> =
            points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect();

        let chart = lattice::saturated_chart(&points)?;
        let r = chart.rank;
        let chart_points: Vec<Vec<Int>> = points
            .iter()
            .map(|p| chart.coords(p).expect("generating point lies in its own hull"))
            .collect();

        if r == 0 {
            return Ok(LatticePolytope {
                ambient_dim,
                vertices: vec![points[0].clone()],
                chart,
                chart_vertices: vec![vec![]],
                facets: vec![],
                face_lattice: OnceBox::new(),
            });
        }

        let raw_facets = enumerate_facets(&chart_points, r);

        // A point is extreme iff its active facet normals span the chart.
        let keep: Vec<usize> = (0..points.len())
            .filter(|&i| {
                let active: Vec<Vec<Int>> = raw_facets
                    .iter()
                    .filter(|f| f.vertex_set.contains(&i))
                    .map(|f| f.normal.clone())
                    .collect();
                IntMatrix::from_rows(&active).rank() == r
            })
            .collect();
        let reindex: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();

        let vertices: Vec<Vec<Int>> = keep.iter().map(|&i| points[i].clone()).collect();
        let chart_vertices: Vec<Vec<Int>> = keep.iter().map(|&i| chart_points[i].clone()).collect();
        let facets: Vec<Facet> = raw_facets
            .into_iter()
            .map(|f| Facet {
                normal: f.normal,
                offset: f.offset,
                vertex_set: f
                    .vertex_set
                    .iter()
                    .filter_map(|i| reindex.get(i).copied())
                    .collect(),
            })
            .collect();

        Ok(LatticePolytope {
            ambient_dim,
            vertices,
            chart,
            chart_vertices,
            facets,
            face_lattice: OnceBox::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the polytope (rank of the saturated chart).
    pub fn dim(&self) -> usize {
        self.chart.rank
    }

    pub fn vertices(&self) -> &[Vec<Int>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn chart(&self) -> &AffineLatticeChart {
        &self.chart
    }

    /// Vertices in chart coordinates of the affine hull.
    pub fn chart_vertices(&self) -> &[Vec<Int>] {
        &self.chart_vertices
    }

    /// Irredundant facet list inside the affine hull (empty for a point).
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    /// All faces, grouped by dimension `0..=dim`. The polytope itself is the
    /// unique top-dimensional face.
    pub fn face_lattice(&self) -> &[Vec<Face>] {
        self.face_lattice.get_or_init(|| Box::new(self.build_face_lattice()))
    }

    fn build_face_lattice(&self) -> Vec<Vec<Face>> {
        let r = self.dim();
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); r + 1];
        let top: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue: Vec<BTreeSet<usize>> = vec![top.clone()];
        seen.insert(top);
        while let Some(set) = queue.pop() {
            let dim = self.vertex_set_dim(&set);
            for facet in &self.facets {
                let inter: BTreeSet<usize> =
                    set.intersection(&facet.vertex_set).copied().collect();
                if !inter.is_empty() && inter != set && seen.insert(inter.clone()) {
                    queue.push(inter);
                }
            }
            by_dim[dim].push(Face { vertex_indices: set, dim });
        }
        for faces in &mut by_dim {
            faces.sort_by(|a, b| a.vertex_indices.cmp(&b.vertex_indices));
        }
        by_dim
    }

    fn vertex_set_dim(&self, set: &BTreeSet<usize>) -> usize {
        let mut it = set.iter();
        let Some(&first) = it.next() else { return 0 };
        let diffs: Vec<Vec<Int>> = it
            .map(|&i| {
                self.chart_vertices[i]
                    .iter()
                    .zip(&self.chart_vertices[first])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&diffs).rank()
    }

    /// Face counts by dimension, `f[j] = |F(P)_j|` for `j = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.face_lattice().iter().map(Vec::len).collect()
    }

    /// The sub-polytope spanned by a face's vertices, in ambient coordinates.
    pub fn face_polytope(&self, face: &Face) -> LatticePolytope {
        let pts: Vec<Vec<Int>> =
            face.vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
        LatticePolytope::from_vertices(self.ambient_dim, &pts)
            .expect("face vertex set is nonempty")
    }

    /// True iff every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        let r = self.dim();
        (0..self.vertices.len()).all(|i| {
            self.facets.iter().filter(|f| f.vertex_set.contains(&i)).count() == r
        })
    }

    /// True iff simple and the primitive inner normals at every vertex form
    /// a basis of the chart lattice.
    pub fn is_smooth(&self) -> bool {
        if !self.is_simple() {
            return false;
        }
        let r = self.dim();
        (0..self.vertices.len()).all(|i| {
            let normals: Vec<Vec<Int>> = self
                .facets
                .iter()
                .filter(|f| f.vertex_set.contains(&i))
                .map(|f| f.normal.clone())
                .collect();
            debug_assert_eq!(normals.len(), r);
            IntMatrix::from_rows(&normals).det().abs() == Int::one()
        })
    }

    /// Membership of a rational ambient point, either in the closed polytope
    /// or in its relative interior.
    pub fn membership(&self, x: &[Rat], relative_interior: bool) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: x.len() });
        }
        let Some(y) = self.chart.coords_rat(x) else {
            return Ok(false);
        };
        // The relative interior of a point is the point itself.
        Ok(self.facets.iter().all(|f| {
            let dot: Rat = f
                .normal
                .iter()
                .zip(&y)
                .map(|(a, b)| Rat::from(a.clone()) * b)
                .sum();
            let off = Rat::from(f.offset.clone());
            if relative_interior {
                dot > off
            } else {
                dot >= off
            }
        }))
    }

    /// The dilate `kP`, `k >= 1`.
    pub fn dilate(&self, k: u32) -> Result<LatticePolytope> {
        if k == 0 {
            return Err(Error::OutOfDomain("dilation factor must be >= 1".to_owned()));
        }
        let k = Int::from(k);
        let pts: Vec<Vec<Int>> =
            self.vertices.iter().map(|v| v.iter().map(|c| c * &k).collect()).collect();
        LatticePolytope::from_vertices(self.ambient_dim, &pts)
    }

    /// The product `P x Q` in the direct-sum lattice.
    pub fn product(&self, other: &LatticePolytope) -> LatticePolytope {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut p = v.clone();
                p.extend(w.iter().cloned());
                pts.push(p);
            }
        }
        LatticePolytope::from_vertices(self.ambient_dim + other.ambient_dim, &pts)
            .expect("product of nonempty vertex sets")
    }

    /// The lattice pyramid: `P` embedded at height 0 plus the apex `e_{n+1}`.
    pub fn pyramid(&self) -> LatticePolytope {
        let mut pts: Vec<Vec<Int>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut p = v.clone();
                p.push(Int::zero());
                p
            })
            .collect();
        let mut apex = vec![Int::zero(); self.ambient_dim + 1];
        apex[self.ambient_dim] = Int::one();
        pts.push(apex);
        LatticePolytope::from_vertices(self.ambient_dim + 1, &pts)
            .expect("pyramid over nonempty vertex set")
    }

    /// The Cayley polytope `P_0 * ... * P_k` of polytopes in a common
    /// ambient `R^m`: `conv(P_0 x e_0, ..., P_k x e_k)` in `R^{m+k+1}`.
    pub fn cayley(factors: &[LatticePolytope]) -> Result<LatticePolytope> {
        if factors.is_empty() {
            return Err(Error::EmptyInput);
        }
        let m = factors[0].ambient_dim;
        for p in factors {
            if p.ambient_dim != m {
                return Err(Error::DimensionMismatch { expected: m, got: p.ambient_dim });
            }
        }
        let k1 = factors.len();
        let mut pts = Vec::new();
        for (i, p) in factors.iter().enumerate() {
            for v in &p.vertices {
                let mut q = v.clone();
                for j in 0..k1 {
                    q.push(if j == i { Int::one() } else { Int::zero() });
                }
                pts.push(q);
            }
        }
        LatticePolytope::from_vertices(m + k1, &pts)
    }

    /// Equality of normal fans for two full-dimensional polytopes in the
    /// same ambient lattice: same primitive facet normals and the same
    /// maximal cones (vertex normal-generator sets).
    pub fn is_strictly_isomorphic(&self, other: &LatticePolytope) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        if self.dim() != self.ambient_dim || other.dim() != other.ambient_dim {
            return Err(Error::NotFullDimensional);
        }
        // Chart coordinates of a full-dimensional polytope can still differ
        // from ambient ones by a unimodular change of basis anchored at the
        // chart origin; compare normals in ambient terms.
        let a = self.ambient_normal_data();
        let b = other.ambient_normal_data();
        Ok(a == b)
    }

    /// Facet normals and vertex cones expressed in the ambient lattice.
    fn ambient_normal_data(&self) -> (BTreeSet<Vec<Int>>, BTreeSet<BTreeSet<Vec<Int>>>) {
        let normals: Vec<Vec<Int>> =
            self.facets.iter().map(|f| self.ambient_normal(f)).collect();
        let normal_set: BTreeSet<Vec<Int>> = normals.iter().cloned().collect();
        let cones: BTreeSet<BTreeSet<Vec<Int>>> = (0..self.vertices.len())
            .map(|i| {
                self.facets
                    .iter()
                    .zip(&normals)
                    .filter(|(f, _)| f.vertex_set.contains(&i))
                    .map(|(_, u)| u.clone())
                    .collect()
            })
            .collect();
        (normal_set, cones)
    }

    /// Pulls a chart-coordinate facet normal back to the ambient lattice.
    /// Chart coordinates are `y = U (x - o)`, so the chart functional `u`
    /// acts on ambient points as `U^T u` (padded with zeros past the rank).
    fn ambient_normal(&self, facet: &Facet) -> Vec<Int> {
        let n = self.ambient_dim;
        let u = self.chart.coordinate_map();
        let mut out = vec![Int::zero(); n];
        for (i, coeff) in facet.normal.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += coeff * &u[(i, j)];
            }
        }
        out
    }

    /// A full-dimensional model `Q` of `P` in `Z^dim(P)`, together with the
    /// chart realizing the lattice isomorphism.
    pub fn full_dimensional_model(&self) -> (LatticePolytope, AffineLatticeChart) {
        let q = LatticePolytope::from_vertices(self.dim(), &self.chart_vertices)
            .expect("chart vertices are nonempty");
        (q, self.chart.clone())
    }

    /// All primitive directions `u` with coordinates bounded by `radius` in
    /// absolute value along which the polytope has lattice width one. The
    /// scan is bounded; directions outside the radius are not found.
    /// Directions are reported up to sign (first nonzero coordinate positive).
    pub fn width_one_directions(&self, radius: u32) -> Result<Vec<Vec<Int>>> {
        if self.dim() != self.ambient_dim {
            return Err(Error::NotFullDimensional);
        }
        if self.ambient_dim == 0 {
            return Ok(vec![]);
        }
        let r = self.ambient_dim;
        let radius = radius as i64;
        let mut out = Vec::new();
        let mut u = vec![-radius; r];
        loop {
            let candidate: Vec<Int> = u.iter().map(|&c| Int::from(c)).collect();
            if is_canonical_primitive(&u) && self.width_along(&candidate) == Some(Int::one()) {
                out.push(candidate);
            }
            // Odometer increment.
            let mut i = 0;
            loop {
                if i == r {
                    out.sort();
                    return Ok(out);
                }
                u[i] += 1;
                if u[i] <= radius {
                    break;
                }
                u[i] = -radius;
                i += 1;
            }
        }
    }

    fn width_along(&self, u: &[Int]) -> Option<Int> {
        let dots: Vec<Int> = self
            .vertices
            .iter()
            .map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect();
        let min = dots.iter().min()?.clone();
        let max = dots.iter().max()?.clone();
        Some(max - min)
    }
}

fn is_canonical_primitive(u: &[i64]) -> bool {
    let Some(&first) = u.iter().find(|&&c| c != 0) else {
        return false;
    };
    if first < 0 {
        return false;
    }
    let mut g: i64 = 0;
    for &c in u {
        g = g.gcd(&c);
    }
    g == 1
}

// -- facet enumeration -------------------------------------------------------

#[derive(Debug)]
struct RawFacet {
    normal: Vec<Int>,
    offset: Int,
    vertex_set: BTreeSet<usize>,
}

/// Facets of the convex hull of `points` (chart coordinates, full rank `r`),
/// by exact brute force over r-point subsets spanning supporting hyperplanes.
fn enumerate_facets(points: &[Vec<Int>], r: usize) -> Vec<RawFacet> {
    debug_assert!(r >= 1);
    if fits_fast_path(points, r) {
        let pts: Vec<Vec<i128>> = points
            .iter()
            .map(|p| p.iter().map(|c| c.to_i128().unwrap()).collect())
            .collect();
        enumerate_facets_generic(&pts, r)
            .into_iter()
            .map(|(normal, offset, vertex_set)| RawFacet {
                normal: normal.into_iter().map(Int::from).collect(),
                offset: Int::from(offset),
                vertex_set,
            })
            .collect()
    } else {
        enumerate_facets_generic(points, r)
            .into_iter()
            .map(|(normal, offset, vertex_set)| RawFacet { normal, offset, vertex_set })
            .collect()
    }
}

/// Conservative overflow check for doing the hyperplane search in `i128`.
fn fits_fast_path(points: &[Vec<Int>], r: usize) -> bool {
    let mut max_abs = Int::one();
    for p in points {
        for c in p {
            if c.abs() > max_abs {
                max_abs = c.abs();
            }
        }
    }
    // Row-sum bound on any (r-1)-minor of a difference matrix, squared for
    // Bareiss intermediates, plus slack for dot products.
    let row_sum = Int::from(2 * r as u64) * &max_abs;
    let mut bound = Int::one();
    for _ in 0..2 * (r.saturating_sub(1)) {
        bound *= &row_sum;
    }
    bound *= Int::from(4 * (r as u64 + 1)) * &max_abs;
    bound < (Int::from(i128::MAX) >> 2)
}

fn enumerate_facets_generic<T>(points: &[Vec<T>], r: usize) -> Vec<(Vec<T>, T, BTreeSet<usize>)>
where
    T: Integer + Signed + Clone,
{
    let n = points.len();
    let mut seen: BTreeMap<(Vec<T>, T), BTreeSet<usize>> = BTreeMap::new();
    let mut combo: Vec<usize> = (0..r).collect();
    if n < r {
        return Vec::new();
    }
    loop {
        if let Some((normal, offset, set)) = try_hyperplane(points, &combo, r) {
            seen.entry((normal, offset)).or_insert(set);
        }
        // Next combination in lexicographic order.
        let mut i = r;
        loop {
            if i == 0 {
                return seen
                    .into_iter()
                    .map(|((normal, offset), set)| (normal, offset, set))
                    .collect();
            }
            i -= 1;
            if combo[i] != i + n - r {
                combo[i] += 1;
                for j in i + 1..r {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// If the affine span of the chosen points is a supporting hyperplane,
/// returns its primitive inner normal, offset, and incident point set.
fn try_hyperplane<T>(
    points: &[Vec<T>],
    combo: &[usize],
    r: usize,
) -> Option<(Vec<T>, T, BTreeSet<usize>)>
where
    T: Integer + Signed + Clone,
{
    let base = &points[combo[0]];
    let diffs: Vec<Vec<T>> = combo[1..]
        .iter()
        .map(|&i| points[i].iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    let mut normal: Vec<T> = Vec::with_capacity(r);
    let mut sign = T::one();
    for j in 0..r {
        let minor: Vec<Vec<T>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        normal.push(sign.clone() * det_bareiss(minor));
        sign = -sign;
    }
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    let dots: Vec<T> = points
        .iter()
        .map(|p| {
            normal
                .iter()
                .zip(p)
                .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect();
    let b = dots[combo[0]].clone();
    let above = dots.iter().any(|d| *d > b);
    let below = dots.iter().any(|d| *d < b);
    if above && below {
        return None;
    }
    let (mut normal, mut offset) = if below {
        (normal.into_iter().map(|c| -c).collect::<Vec<T>>(), -b)
    } else {
        (normal, b)
    };
    let mut g = T::zero();
    for c in &normal {
        g = g.gcd(c);
    }
    for c in &mut normal {
        *c = c.clone() / g.clone();
    }
    offset = offset / g;
    let set: BTreeSet<usize> = dots
        .iter()
        .enumerate()
        .filter(|(_, d)| **d == dots[combo[0]])
        .map(|(i, _)| i)
        .collect();
    Some((normal, offset, set))
}

fn det_bareiss<T>(mut m: Vec<Vec<T>>) -> T
where
    T: Integer + Signed + Clone,
{
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = (m[i][j].clone() * m[k][k].clone()
                    - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = t;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Standard constructors used throughout the test corpus.
pub mod build {
    use super::*;

    /// The unimodular simplex `S_n = conv(0, e_1, ..., e_n)`.
    pub fn simplex(n: usize) -> LatticePolytope {
        let mut pts = vec![vec![Int::zero(); n]];
        for i in 0..n {
            let mut p = vec![Int::zero(); n];
            p[i] = Int::one();
            pts.push(p);
        }
        LatticePolytope::from_vertices(n, &pts).expect("simplex vertices are valid")
    }

    /// The cube `[0, a]^n`.
    pub fn cube(n: usize, a: u32) -> LatticePolytope {
        let a = Int::from(a);
        let mut pts = Vec::with_capacity(1 << n);
        for mask in 0u64..(1 << n) {
            let p: Vec<Int> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { a.clone() } else { Int::zero() })
                .collect();
            pts.push(p);
        }
        LatticePolytope::from_vertices(n, &pts).expect("cube vertices are valid")
    }
}
