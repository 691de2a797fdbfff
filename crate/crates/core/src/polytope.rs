//! Exact lattice polytopes.
//!
//! Hulls are computed by brute force: every affinely independent subset of
//! `dim` points spanning a hyperplane of the affine hull is a candidate, and
//! the candidate is kept if all points lie on one side. The face lattice is
//! the closure of the facets under intersection. Nothing here shares code
//! with the permutation combinatorics, so the two can check each other.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Deref;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bruhat_graph::{moment_point, BruhatEdgeSet};
use crate::error::{Error, Result};
use crate::lattice;
use crate::permutation::{BruhatInterval, Permutation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl Deref for LatticePoint {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Size guards for the brute-force hull.
#[derive(Clone, Copy, Debug)]
pub struct HullLimits {
    pub max_ambient: usize,
    pub max_points: usize,
}

impl Default for HullLimits {
    fn default() -> Self {
        Self {
            max_ambient: 6,
            max_points: 200,
        }
    }
}

/// A facet inequality `⟨normal, x⟩ ≤ offset`, tight exactly on `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<usize>,
}

/// A non-empty face, as a sorted list of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_all(&self, vs: &[usize]) -> bool {
        vs.iter().all(|&v| self.contains(v))
    }
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    ambient: usize,
    vertices: Vec<LatticePoint>,
    dim: usize,
    facets: Vec<Facet>,
    /// Graded by dimension; the last face is the polytope itself.
    faces: Vec<Face>,
}

impl LatticePolytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Id of the face equal to the whole polytope.
    pub fn top_face(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn vertex_index(&self, p: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|v| v.coords() == p)
    }

    /// Face counts `f_0, ..., f_dim` (with `f_dim = 1`).
    pub fn fvector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// Vertex pairs spanning the one-dimensional faces.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces
            .iter()
            .filter(|f| f.dim == 1)
            .map(|f| (f.vertices[0], f.vertices[1]))
            .collect()
    }

    /// Neighbours of `v` along edges.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges()
            .into_iter()
            .filter_map(|(a, b)| match () {
                _ if a == v => Some(b),
                _ if b == v => Some(a),
                _ => None,
            })
            .collect()
    }

    /// The 1-skeleton as a set of coordinate pairs, each pair sorted.
    pub fn skeleton(&self) -> BTreeSet<(LatticePoint, LatticePoint)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| ordered_pair(self.vertices[a].clone(), self.vertices[b].clone()))
            .collect()
    }

    /// The smallest face containing all of `vs`.
    pub fn smallest_face_containing(&self, vs: &[usize]) -> usize {
        // faces are graded, so the first hit has minimal dimension, and the
        // minimal face containing a set is unique
        self.faces
            .iter()
            .position(|f| f.contains_all(vs))
            .expect("the polytope itself contains every vertex")
    }

    /// `Σ_{i<dim} (-1)^i f_i = 1 - (-1)^dim` on the boundary complex.
    pub fn satisfies_euler_relation(&self) -> bool {
        let f = self.fvector();
        let lhs: i64 = f[..self.dim]
            .iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        let rhs = if self.dim % 2 == 0 { 0 } else { 2 };
        lhs == rhs
    }

    /// Checks that the face list is closed under non-empty intersection.
    pub fn face_lattice_closed(&self) -> bool {
        let set: HashSet<&Vec<usize>> = self.faces.iter().map(|f| &f.vertices).collect();
        self.faces.iter().tuple_combinations().all(|(a, b)| {
            let c = intersect(&a.vertices, &b.vertices);
            c.is_empty() || set.contains(&c)
        })
    }

    pub fn classify_vertex(&self, vi: usize) -> Result<VertexClassification> {
        self.classify_vertex_in_face(self.top_face(), vi)
    }

    /// Classification of vertex `vi` relative to the face `face_id`.
    pub fn classify_vertex_in_face(&self, face_id: usize, vi: usize) -> Result<VertexClassification> {
        if vi >= self.vertices.len() {
            return Err(Error::VertexOutOfRange {
                index: vi,
                count: self.vertices.len(),
            });
        }
        let face = &self.faces[face_id];
        if !face.contains(vi) {
            return Err(Error::Consistency(format!(
                "vertex {vi} is not in face {face_id}"
            )));
        }
        let v = &self.vertices[vi];
        let edge_directions: Vec<Vec<i64>> = self
            .neighbours(vi)
            .into_iter()
            .filter(|&x| face.contains(x))
            .map(|x| lattice::primitive(&lattice::sub(&self.vertices[x], v)))
            .collect();
        let is_simple = edge_directions.len() == face.dim;
        let is_smooth = is_simple && lattice::is_saturated_basis(&edge_directions);
        Ok(VertexClassification {
            vertex: vi,
            edge_directions,
            is_simple,
            is_smooth,
        })
    }

    pub fn is_simple(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.classify_vertex(v).map(|c| c.is_simple).unwrap_or(false))
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.classify_vertex(v).map(|c| c.is_smooth).unwrap_or(false))
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile {
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
            facets: Some(
                self.facets
                    .iter()
                    .map(|f| Facet {
                        vertices: Vec::new(),
                        ..f.clone()
                    })
                    .collect(),
            ),
            fvector: Some(self.fvector()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    /// Reads a polytope file and recomputes its hull. Optional facets and
    /// f-vector in the file are checked against the recomputation.
    pub fn from_json(s: &str, limits: &HullLimits) -> Result<Self> {
        let file: PolytopeFile = serde_json::from_str(s)?;
        let points = file.vertices.iter().cloned().map(LatticePoint).collect::<Vec<_>>();
        let poly = convex_hull_with_limits(&points, limits)?;
        if let Some(f) = &file.fvector {
            if *f != poly.fvector() {
                return Err(Error::Consistency(format!(
                    "file f-vector {f:?} disagrees with computed {:?}",
                    poly.fvector()
                )));
            }
        }
        if let Some(facets) = &file.facets {
            let given: BTreeSet<_> = facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
            let computed: BTreeSet<_> = poly.facets.iter().map(|f| (f.normal.clone(), f.offset)).collect();
            if given != computed {
                return Err(Error::Consistency("file facets disagree with computed hull".into()));
            }
        }
        Ok(poly)
    }
}

/// Polytope import/export format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Facet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fvector: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClassification {
    pub vertex: usize,
    pub edge_directions: Vec<Vec<i64>>,
    pub is_simple: bool,
    pub is_smooth: bool,
}

fn ordered_pair(a: LatticePoint, b: LatticePoint) -> (LatticePoint, LatticePoint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn affine_dim(points: &[&[i64]]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<_> = rest.iter().map(|p| lattice::sub(p, p0)).collect();
            lattice::rank(&diffs)
        }
    }
}

pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope> {
    convex_hull_with_limits(points, &HullLimits::default())
}

pub fn convex_hull_with_limits(points: &[LatticePoint], limits: &HullLimits) -> Result<LatticePolytope> {
    let Some(first) = points.first() else {
        return Err(Error::Empty);
    };
    let ambient = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != ambient) {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            actual: p.len(),
        });
    }
    if ambient > limits.max_ambient {
        return Err(Error::GuardExceeded {
            what: "ambient dimension",
            actual: ambient,
            limit: limits.max_ambient,
        });
    }
    let mut seen = HashSet::new();
    let points: Vec<LatticePoint> = points.iter().filter(|p| seen.insert(*p)).cloned().collect();
    if points.len() > limits.max_points {
        return Err(Error::GuardExceeded {
            what: "number of points",
            actual: points.len(),
            limit: limits.max_points,
        });
    }

    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| lattice::sub(p, &points[0])).collect();
    let dim = lattice::rank(&diffs);
    if dim == 0 {
        return Ok(LatticePolytope {
            ambient,
            vertices: points,
            dim: 0,
            facets: Vec::new(),
            faces: vec![Face {
                vertices: vec![0],
                dim: 0,
            }],
        });
    }

    // coordinates on which the affine hull projects isomorphically
    let mut chart: Vec<usize> = Vec::with_capacity(dim);
    for c in 0..ambient {
        let mut trial = chart.clone();
        trial.push(c);
        let cols: Vec<Vec<i64>> = diffs.iter().map(|d| trial.iter().map(|&k| d[k]).collect()).collect();
        if lattice::rank(&cols) == trial.len() {
            chart = trial;
            if chart.len() == dim {
                break;
            }
        }
    }
    let projected: Vec<Vec<i64>> = points.iter().map(|p| chart.iter().map(|&k| p[k]).collect()).collect();

    let raw_facets = supporting_hyperplanes(&projected, dim)?;

    let tight: Vec<Vec<usize>> = raw_facets
        .iter()
        .map(|(nrm, off)| {
            (0..points.len())
                .filter(|&i| lattice::dot(nrm, &projected[i]) == *off)
                .collect()
        })
        .collect();

    // extremal points: the facets through them meet in that point alone
    let extremal: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let mut meet: Option<Vec<usize>> = None;
            for t in tight.iter().filter(|t| t.binary_search(&i).is_ok()) {
                meet = Some(match meet {
                    None => t.clone(),
                    Some(m) => intersect(&m, t),
                });
            }
            meet.is_some_and(|m| m == [i])
        })
        .collect();
    let mut reindex = vec![usize::MAX; points.len()];
    for (new, &old) in extremal.iter().enumerate() {
        reindex[old] = new;
    }
    let vertices: Vec<LatticePoint> = extremal.iter().map(|&i| points[i].clone()).collect();

    let mut facets: Vec<Facet> = raw_facets
        .into_iter()
        .zip(&tight)
        .map(|((nrm, offset), t)| {
            let mut normal = vec![0; ambient];
            for (k, &c) in chart.iter().enumerate() {
                normal[c] = nrm[k];
            }
            Facet {
                normal,
                offset,
                vertices: t.iter().map(|&i| reindex[i]).filter(|&i| i != usize::MAX).collect(),
            }
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    let faces = face_lattice(&vertices, &facets, dim);
    Ok(LatticePolytope {
        ambient,
        vertices,
        dim,
        facets,
        faces,
    })
}

/// Exterior products in `Λ^k R^d`, coefficients indexed by `k`-subsets of
/// coordinates (as bitmasks).
struct Wedge {
    subsets: Vec<Vec<u32>>,
    index: Vec<usize>,
}

impl Wedge {
    fn new(d: usize) -> Self {
        let mut subsets = vec![Vec::new(); d + 1];
        let mut index = vec![0; 1 << d];
        for mask in 0u32..(1 << d) {
            let k = mask.count_ones() as usize;
            index[mask as usize] = subsets[k].len();
            subsets[k].push(mask);
        }
        Self { subsets, index }
    }

    /// `out = omega ∧ v` for a `k`-vector `omega`.
    fn extend(&self, omega: &[i128], k: usize, v: &[i128], out: &mut [i128]) {
        for (slot, &t) in out.iter_mut().zip(&self.subsets[k + 1]) {
            let mut acc = 0;
            let mut rest = t;
            while rest != 0 {
                let j = rest.trailing_zeros();
                rest &= rest - 1;
                // e_S ∧ e_j = (-1)^{|{s ∈ S : s > j}|} e_{S ∪ j}
                let above = (t >> (j + 1)).count_ones();
                let term = omega[self.index[(t ^ (1 << j)) as usize]] * v[j as usize];
                acc += if above % 2 == 0 { term } else { -term };
            }
            *slot = acc;
        }
    }
}

/// Every hyperplane through `d` affinely independent points that leaves all
/// points on one side, as primitive `(normal, offset)` with `⟨normal, x⟩ ≤
/// offset`. Subsets are enumerated depth-first with the exterior product of
/// the difference vectors carried along, so dependent prefixes are pruned.
fn supporting_hyperplanes(points: &[Vec<i64>], d: usize) -> Result<Vec<(Vec<i64>, i64)>> {
    struct Enumeration {
        points: Vec<Vec<i128>>,
        d: usize,
        wedge: Wedge,
        bufs: Vec<Vec<i128>>,
        base: usize,
        found: HashSet<(Vec<i64>, i64)>,
        out: Vec<(Vec<i64>, i64)>,
    }

    impl Enumeration {
        fn descend(&mut self, k: usize, start: usize) -> Result<()> {
            let m = self.points.len();
            if k + 1 == self.d {
                return self.test();
            }
            for i in start..=(m - (self.d - 1 - k)) {
                let v: Vec<i128> = (0..self.d)
                    .map(|c| self.points[i][c] - self.points[self.base][c])
                    .collect();
                let (lo, hi) = self.bufs.split_at_mut(k + 1);
                self.wedge.extend(&lo[k], k, &v, &mut hi[0]);
                if hi[0].iter().all(|&x| x == 0) {
                    continue;
                }
                self.descend(k + 1, i + 1)?;
            }
            Ok(())
        }

        fn test(&mut self) -> Result<()> {
            let d = self.d;
            let omega = &self.bufs[d - 1];
            let full = (1u32 << d) - 1;
            let mut normal: Vec<i128> = (0..d)
                .map(|c| {
                    let x = omega[self.wedge.index[(full ^ (1 << c)) as usize]];
                    if (d - 1 - c) % 2 == 0 {
                        x
                    } else {
                        -x
                    }
                })
                .collect();
            let dot = |p: &[i128], n: &[i128]| p.iter().zip(n).map(|(a, b)| a * b).sum::<i128>();
            let mut offset = dot(&self.points[self.base], &normal);
            let (mut below, mut above) = (false, false);
            for q in &self.points {
                match dot(q, &normal).cmp(&offset) {
                    std::cmp::Ordering::Less => below = true,
                    std::cmp::Ordering::Greater => above = true,
                    std::cmp::Ordering::Equal => {}
                }
                if below && above {
                    return Ok(());
                }
            }
            if above {
                normal.iter_mut().for_each(|x| *x = -*x);
                offset = -offset;
            }
            let g = normal.iter().fold(0, |g, &x| lattice::gcd(g, x));
            let narrow = |x: i128| {
                i64::try_from(x / g).map_err(|_| Error::Consistency("facet normal overflows i64".into()))
            };
            let normal = normal.into_iter().map(narrow).collect::<Result<Vec<_>>>()?;
            let offset = narrow(offset)?;
            if self.found.insert((normal.clone(), offset)) {
                self.out.push((normal, offset));
            }
            Ok(())
        }
    }

    let wedge = Wedge::new(d);
    let mut bufs: Vec<Vec<i128>> = wedge.subsets.iter().take(d).map(|s| vec![0; s.len()]).collect();
    bufs[0][0] = 1;
    let mut e = Enumeration {
        points: points.iter().map(|p| p.iter().map(|&x| x as i128).collect()).collect(),
        d,
        wedge,
        bufs,
        base: 0,
        found: HashSet::new(),
        out: Vec::new(),
    };
    for base in 0..points.len() {
        e.base = base;
        e.descend(0, base + 1)?;
    }
    Ok(e.out)
}

fn face_lattice(vertices: &[LatticePoint], facets: &[Facet], dim: usize) -> Vec<Face> {
    let mut all: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for facet in facets {
                let g = intersect(f, &facet.vertices);
                if !g.is_empty() && all.insert(g.clone()) {
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    let mut faces: Vec<Face> = all
        .into_iter()
        .map(|vs| {
            let pts: Vec<&[i64]> = vs.iter().map(|&i| vertices[i].coords()).collect();
            Face {
                dim: affine_dim(&pts),
                vertices: vs,
            }
        })
        .collect();
    faces.push(Face {
        vertices: (0..vertices.len()).collect(),
        dim,
    });
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    faces
}

/// The one-line words `(u(1), ..., u(n))` of the interval members: the point
/// set of `Q_{v,w}`.
pub fn bip_vertices(iv: &BruhatInterval) -> Vec<LatticePoint> {
    iv.members()
        .iter()
        .map(|u| LatticePoint(u.word().iter().map(|&x| x as i64).collect()))
        .collect()
}

/// The moment points `ū = (u⁻¹(1), ..., u⁻¹(n))` of the interval members.
/// Over `[id, w]` these are the vertices of `Q_{id,w⁻¹}`.
pub fn moment_vertices(iv: &BruhatInterval) -> Vec<LatticePoint> {
    iv.members().iter().map(|u| LatticePoint(moment_point(u))).collect()
}

/// `Q_{v,w}` via the hull oracle.
pub fn bruhat_interval_polytope(v: &Permutation, w: &Permutation, limits: &HullLimits) -> Result<LatticePolytope> {
    let iv = BruhatInterval::new(v, w)?;
    convex_hull_with_limits(&bip_vertices(&iv), limits)
}

/// The moment polytope `Q_{id,w⁻¹}` of the generic torus orbit closure in the
/// Schubert variety of `w`, with vertex `i` equal to the moment point of the
/// `i`-th member of `[id, w]`.
pub fn moment_polytope(w: &Permutation, limits: &HullLimits) -> Result<LatticePolytope> {
    let iv = BruhatInterval::below(w)?;
    convex_hull_with_limits(&moment_vertices(&iv), limits)
}

/// Edges of `Q_{id,w⁻¹}` from the edge sets alone: `ū` is joined to the
/// moment point of `t_{p,q} u` for every `(p, q) ∈ E_w(u)`.
pub fn bip_edges_combinatorial(w: &Permutation) -> Result<BTreeSet<(LatticePoint, LatticePoint)>> {
    let iv = BruhatInterval::below(w)?;
    let mut edges = BTreeSet::new();
    for u in iv.members() {
        let es = BruhatEdgeSet::new(u, w)?;
        for &e in &es.reduced {
            let v = es.neighbour(e);
            edges.insert(ordered_pair(
                LatticePoint(moment_point(u)),
                LatticePoint(moment_point(&v)),
            ));
        }
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    proptest::proptest! {
        #[test]
        fn wedge_matches_cofactor_normal(
            rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 5), 4)
        ) {
            let wedge = Wedge::new(5);
            let mut omega = vec![1i128];
            for (k, r) in rows.iter().enumerate() {
                let v: Vec<i128> = r.iter().map(|&x| x as i128).collect();
                let mut next = vec![0; wedge.subsets[k + 1].len()];
                wedge.extend(&omega, k, &v, &mut next);
                omega = next;
            }
            let expected = lattice::cofactor_normal(&rows, 5);
            for (c, &e) in expected.iter().enumerate() {
                let x = omega[wedge.index[(0b11111 ^ (1 << c)) as usize]];
                let dual = if (4 - c) % 2 == 0 { x } else { -x };
                proptest::prop_assert_eq!(dual, e as i128);
            }
        }
    }

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint(p.to_vec())).collect()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    pub(crate) fn pyramid() -> LatticePolytope {
        convex_hull(&pts(&[&[1, 0, 0], &[0, 1, 0], &[-1, 0, 0], &[0, 0, -1], &[0, 0, 1]])).unwrap()
    }

    #[test]
    fn pyramid_face_counts() {
        let p = pyramid();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.fvector(), vec![5, 8, 5, 1]);
        assert!(p.satisfies_euler_relation());
        assert!(p.face_lattice_closed());
        for f in p.facets() {
            for v in p.vertices() {
                assert!(lattice::dot(&f.normal, v) <= f.offset);
            }
            let tight: Vec<_> = f.vertices.iter().map(|&i| p.vertices()[i].coords()).collect();
            assert_eq!(affine_dim(&tight), 2);
        }
    }

    #[test]
    fn degenerate_inputs() {
        let point = convex_hull(&pts(&[&[3, 1]])).unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.fvector(), vec![1]);
        let segment = convex_hull(&pts(&[&[0, 0], &[2, 2], &[1, 1]])).unwrap();
        assert_eq!(segment.fvector(), vec![2, 1]);
        assert_eq!(segment.vertices().len(), 2);
        assert!(convex_hull(&[]).is_err());
        assert!(convex_hull(&pts(&[&[0, 0], &[1]])).is_err());
        let big = vec![LatticePoint(vec![0; 7])];
        assert!(matches!(convex_hull(&big), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn interior_points_are_dropped() {
        let sq = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0]])).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.fvector(), vec![4, 4, 1]);
    }

    #[test]
    fn hexagon() {
        let q = bruhat_interval_polytope(&Permutation::identity(3), &perm("321"), &HullLimits::default()).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.fvector(), vec![6, 6, 1]);
        assert!(q.is_smooth());
    }

    #[test]
    fn triangle_vertex_simple_but_singular() {
        let t = convex_hull(&pts(&[&[0, 0], &[4, 0], &[0, 2]])).unwrap();
        let v = t.vertex_index(&[0, 2]).unwrap();
        let c = t.classify_vertex(v).unwrap();
        assert!(c.is_simple);
        assert!(!c.is_smooth);
        let o = t.classify_vertex(t.vertex_index(&[0, 0]).unwrap()).unwrap();
        assert!(o.is_smooth);
        assert!(t.classify_vertex(3).is_err());
    }

    #[test]
    fn pyramid_apex_is_not_simple() {
        let p = pyramid();
        let apex = p.vertex_index(&[0, 1, 0]).unwrap();
        let c = p.classify_vertex(apex).unwrap();
        assert_eq!(c.edge_directions.len(), 4);
        assert!(!c.is_simple && !c.is_smooth);
        // the figure's top vertex (0,0,1) is a base vertex here: 3 edges
        let top = p.vertex_index(&[0, 0, 1]).unwrap();
        assert!(p.classify_vertex(top).unwrap().is_simple);
    }

    #[test]
    fn permutohedron_face_counts() {
        let q = moment_polytope(&Permutation::longest(4), &HullLimits::default()).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.fvector(), vec![24, 36, 14, 1]);
        assert!(q.is_smooth());
    }

    #[test]
    fn bip_points() {
        let iv = BruhatInterval::below(&perm("4231")).unwrap();
        let pts = moment_vertices(&iv);
        assert_eq!(pts.len(), 20);
        assert!(pts.iter().all(|p| p.iter().sum::<i64>() == 10));
        assert!(pts.contains(&LatticePoint(vec![2, 4, 3, 1])));
        let q = convex_hull(&pts).unwrap();
        assert_eq!(q.vertices().len(), 20);
        let single = BruhatInterval::below(&Permutation::identity(5)).unwrap();
        assert_eq!(bip_vertices(&single), vec![LatticePoint(vec![1, 2, 3, 4, 5])]);
    }

    #[test]
    fn q_id_3412() {
        let q = bruhat_interval_polytope(&Permutation::identity(4), &perm("3412"), &HullLimits::default()).unwrap();
        assert_eq!(q.vertices().len(), 14);
        assert_eq!(q.dim(), 3);
    }

    #[test]
    fn q_1324_4231_has_eight_simple_vertices() {
        let q = bruhat_interval_polytope(&perm("1324"), &perm("4231"), &HullLimits::default()).unwrap();
        assert_eq!(q.vertices().len(), 16);
        let simple = (0..16).filter(|&v| q.classify_vertex(v).unwrap().is_simple).count();
        assert_eq!(simple, 8);
    }

    #[test]
    fn combinatorial_edges() {
        assert!(bip_edges_combinatorial(&Permutation::identity(4)).unwrap().is_empty());
        let e = bip_edges_combinatorial(&perm("3412")).unwrap();
        let a = LatticePoint(moment_point(&perm("2143")));
        let b = LatticePoint(moment_point(&perm("2413")));
        assert!(e.contains(&ordered_pair(a, b)));
        let hull = moment_polytope(&perm("4231"), &HullLimits::default()).unwrap();
        assert_eq!(bip_edges_combinatorial(&perm("4231")).unwrap(), hull.skeleton());
    }

    #[test]
    fn json_round_trip() {
        let p = pyramid();
        let s = p.to_json().unwrap();
        let q = LatticePolytope::from_json(&s, &HullLimits::default()).unwrap();
        assert_eq!(q.fvector(), p.fvector());
        let bad = r#"{"vertices": [[0,0],[1,0],[0,1]], "fvector": [3, 2, 1]}"#;
        assert!(LatticePolytope::from_json(bad, &HullLimits::default()).is_err());
    }
}
