//! Retraction sequences of lattice polytopes.
//!
//! A retraction sequence removes the vertices of `P` one at a time. At each
//! step the remaining complex `P_i` is the set of faces of `P` that avoid all
//! previously removed vertices; the next vertex `v_i` must lie in a unique
//! maximal face `Q_i` of `P_i` and be simple in it. The sequence records
//! `dim Q_i`, and the Poincaré polynomial of the toric variety is
//! `Σ t^(2 dim Q_i)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice;
use crate::poincare::IntPolynomial;
use crate::polytope::LatticePolytope;

/// Default cap on memoized dead-end states in [`search_retraction`].
pub const DEFAULT_SEARCH_CAP: usize = 1_000_000;

/// Strictly decreasing powers of two, `a_i = 2^(n-i)`.
pub fn default_height(n: usize) -> Vec<i64> {
    (0..n).map(|i| 1i64 << (n - 1 - i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionStep {
    /// Face ids of the remaining complex `P_i`.
    pub remaining: Vec<usize>,
    pub chosen_face: usize,
    pub chosen_vertex: usize,
    pub step_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RetractionSource {
    HeightFunction,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionSequence {
    pub steps: Vec<RetractionStep>,
    pub source: RetractionSource,
}

impl RetractionSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.step_dim).collect()
    }
}

/// The 1-skeleton oriented towards increasing `h = ⟨a, ·⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedSkeleton {
    pub heights: Vec<i64>,
    /// Arcs `(low, high)`.
    pub arcs: Vec<(usize, usize)>,
    /// `asc(v)`: number of arcs leaving `v`.
    pub ascents: Vec<usize>,
}

impl OrientedSkeleton {
    pub fn ascending_neighbours(&self, v: usize) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|&&(lo, _)| lo == v)
            .map(|&(_, hi)| hi)
            .collect()
    }

    /// Vertices sorted by height, ties broken by lexicographic coordinates.
    pub fn vertex_order(&self, p: &LatticePolytope) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.heights.len()).collect();
        order.sort_by(|&x, &y| {
            (self.heights[x], p.vertices()[x].coords()).cmp(&(self.heights[y], p.vertices()[y].coords()))
        });
        order
    }
}

pub fn orient_by_h(p: &LatticePolytope, a: &[i64]) -> Result<OrientedSkeleton> {
    if a.len() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            actual: a.len(),
        });
    }
    let heights: Vec<i64> = p.vertices().iter().map(|v| lattice::dot(a, v)).collect();
    let mut arcs = Vec::new();
    let mut ascents = vec![0; heights.len()];
    for (x, y) in p.edges() {
        let (lo, hi) = match heights[x].cmp(&heights[y]) {
            std::cmp::Ordering::Less => (x, y),
            std::cmp::Ordering::Greater => (y, x),
            std::cmp::Ordering::Equal => {
                return Err(Error::NonGeneric(
                    p.vertices()[x].coords().to_vec(),
                    p.vertices()[y].coords().to_vec(),
                ))
            }
        };
        arcs.push((lo, hi));
        ascents[lo] += 1;
    }
    Ok(OrientedSkeleton {
        heights,
        arcs,
        ascents,
    })
}

/// For each vertex, the face spanned by its ascending edges, or the reason
/// there is none.
pub fn ascending_face(p: &LatticePolytope, skel: &OrientedSkeleton, v: usize) -> Result<usize> {
    let up = skel.ascending_neighbours(v);
    let origin = &p.vertices()[v];
    let dirs: Vec<Vec<i64>> = up.iter().map(|&x| lattice::sub(&p.vertices()[x], origin)).collect();
    if lattice::rank(&dirs) != up.len() {
        return Err(Error::HypothesisViolated(format!(
            "ascending edge directions at {origin} are linearly dependent"
        )));
    }
    let mut span = up.clone();
    span.push(v);
    let face_id = p.smallest_face_containing(&span);
    let face = p.face(face_id);
    let mut in_face: Vec<usize> = p.neighbours(v).into_iter().filter(|&x| face.contains(x)).collect();
    in_face.sort_unstable();
    let mut up_sorted = up;
    up_sorted.sort_unstable();
    if face.dim != up_sorted.len() || in_face != up_sorted {
        return Err(Error::HypothesisViolated(format!(
            "ascending edges at {origin} do not span a face"
        )));
    }
    Ok(face_id)
}

/// The retraction sequence induced by the height function `⟨a, ·⟩`.
pub fn h_retraction(p: &LatticePolytope, a: &[i64]) -> Result<RetractionSequence> {
    let skel = orient_by_h(p, a)?;
    let order = skel.vertex_order(p);
    let mut removed = vec![false; p.vertices().len()];
    let mut steps = Vec::with_capacity(order.len());
    for &v in &order {
        let chosen_face = ascending_face(p, &skel, v)?;
        steps.push(RetractionStep {
            remaining: remaining_faces(p, &removed),
            chosen_face,
            chosen_vertex: v,
            step_dim: skel.ascents[v],
        });
        removed[v] = true;
    }
    let seq = RetractionSequence {
        steps,
        source: RetractionSource::HeightFunction,
    };
    validate(p, &seq).map_err(|e| Error::Consistency(format!("height-induced sequence invalid: {e}")))?;
    Ok(seq)
}

fn remaining_faces(p: &LatticePolytope, removed: &[bool]) -> Vec<usize> {
    (0..p.faces().len())
        .filter(|&f| p.face(f).vertices.iter().all(|&v| !removed[v]))
        .collect()
}

/// If `v` is a free vertex of the complex left after deleting `removed`,
/// the unique maximal face containing it.
fn free_face(p: &LatticePolytope, removed: &[bool], v: usize) -> Option<usize> {
    let alive: Vec<usize> = (0..p.faces().len())
        .filter(|&f| {
            let face = p.face(f);
            face.contains(v) && face.vertices.iter().all(|&x| !removed[x])
        })
        .collect();
    // faces are graded, so the last alive face has maximal dimension
    let &top = alive.last()?;
    let top_face = p.face(top);
    if !alive.iter().all(|&f| top_face.contains_all(&p.face(f).vertices)) {
        return None;
    }
    let simple = p.classify_vertex_in_face(top, v).ok()?.is_simple;
    simple.then_some(top)
}

/// Checks every defining property of a retraction sequence, independently of
/// how it was built.
pub fn validate(p: &LatticePolytope, seq: &RetractionSequence) -> Result<()> {
    let nv = p.vertices().len();
    if seq.steps.len() != nv {
        return Err(Error::Consistency(format!(
            "{} steps for {nv} vertices",
            seq.steps.len()
        )));
    }
    let mut removed = vec![false; nv];
    for (i, step) in seq.steps.iter().enumerate() {
        let v = step.chosen_vertex;
        if v >= nv || removed[v] {
            return Err(Error::Consistency(format!("step {i}: vertex {v} not available")));
        }
        if step.remaining != remaining_faces(p, &removed) {
            return Err(Error::Consistency(format!("step {i}: wrong remaining complex")));
        }
        if free_face(p, &removed, v) != Some(step.chosen_face) {
            return Err(Error::Consistency(format!(
                "step {i}: vertex {v} is not free in face {}",
                step.chosen_face
            )));
        }
        if p.face(step.chosen_face).dim != step.step_dim {
            return Err(Error::Consistency(format!("step {i}: wrong step dimension")));
        }
        removed[v] = true;
    }
    if let Some(first) = seq.steps.first() {
        if first.chosen_face != p.top_face() {
            return Err(Error::Consistency("first face is not the polytope".into()));
        }
    }
    Ok(())
}

pub fn search_retraction(p: &LatticePolytope) -> Result<Option<RetractionSequence>> {
    search_retraction_capped(p, DEFAULT_SEARCH_CAP)
}

/// Exhaustive backtracking over free-vertex choices, in vertex-index order.
/// Dead-end states (sets of removed vertices) are memoized; exceeding `cap`
/// of them is an error rather than a silent give-up.
pub fn search_retraction_capped(p: &LatticePolytope, cap: usize) -> Result<Option<RetractionSequence>> {
    struct Search<'a> {
        p: &'a LatticePolytope,
        cap: usize,
        dead: HashSet<Vec<bool>>,
        removed: Vec<bool>,
        path: Vec<(usize, usize)>,
    }

    impl Search<'_> {
        fn run(&mut self) -> Result<bool> {
            if self.path.len() == self.removed.len() {
                return Ok(true);
            }
            if self.dead.contains(&self.removed) {
                return Ok(false);
            }
            for v in 0..self.removed.len() {
                if self.removed[v] {
                    continue;
                }
                let Some(face) = free_face(self.p, &self.removed, v) else {
                    continue;
                };
                self.removed[v] = true;
                self.path.push((v, face));
                if self.run()? {
                    return Ok(true);
                }
                self.path.pop();
                self.removed[v] = false;
            }
            if self.dead.len() >= self.cap {
                return Err(Error::SearchCap(self.cap));
            }
            self.dead.insert(self.removed.clone());
            Ok(false)
        }
    }

    let mut search = Search {
        p,
        cap,
        dead: HashSet::new(),
        removed: vec![false; p.vertices().len()],
        path: Vec::new(),
    };
    if !search.run()? {
        return Ok(None);
    }
    let mut removed = vec![false; p.vertices().len()];
    let steps = search
        .path
        .iter()
        .map(|&(v, face)| {
            let step = RetractionStep {
                remaining: remaining_faces(p, &removed),
                chosen_face: face,
                chosen_vertex: v,
                step_dim: p.face(face).dim,
            };
            removed[v] = true;
            step
        })
        .collect();
    let seq = RetractionSequence {
        steps,
        source: RetractionSource::Search,
    };
    validate(p, &seq)?;
    Ok(Some(seq))
}

/// `Σ_i t^(2 dim Q_i)`.
pub fn poincare_from_retraction(seq: &RetractionSequence) -> IntPolynomial {
    IntPolynomial::from_exponents(seq.steps.iter().map(|s| 2 * s.step_dim))
}

/// Whether every chosen vertex is smooth in its chosen face.
pub fn smooth_step_certificate(p: &LatticePolytope, seq: &RetractionSequence) -> bool {
    seq.steps.iter().all(|s| {
        p.classify_vertex_in_face(s.chosen_face, s.chosen_vertex)
            .is_ok_and(|c| c.is_smooth)
    })
}

/// Flat export of a sequence: coordinates rather than ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepExport {
    pub vertex: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<i64>,
    pub step_dim: usize,
    pub face: Vec<Vec<i64>>,
}

pub fn export_steps(p: &LatticePolytope, seq: &RetractionSequence, a: Option<&[i64]>) -> Vec<StepExport> {
    seq.steps
        .iter()
        .map(|s| {
            let vertex = p.vertices()[s.chosen_vertex].coords().to_vec();
            StepExport {
                height: a.map(|a| lattice::dot(a, &vertex)),
                vertex,
                step_dim: s.step_dim,
                face: p
                    .face(s.chosen_face)
                    .vertices
                    .iter()
                    .map(|&i| p.vertices()[i].coords().to_vec())
                    .collect(),
            }
        })
        .collect()
}
