//! Edge sets of Bruhat interval polytopes at a vertex.
//!
//! For `u ≤ w` the raw set `Ẽ_w(u)` collects the value pairs `(u(i), u(j))`,
//! `i < j`, such that `t_{u(i),u(j)} u ≤ w` and the lengths differ by one. Its
//! transitive reduction `E_w(u)` indexes the edges of `Q_{id,w⁻¹}` at `ū`, and
//! splits into ascending pairs (`u(i) < u(j)`) and descending ones.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice;
use crate::permutation::{BruhatInterval, Permutation};

/// An ordered pair of values `(p, q)` of a permutation, with `p` occurring to
/// the left of `q` in the one-line word.
pub type ValuePair = (usize, usize);

pub fn raw_edges(u: &Permutation, w: &Permutation) -> Result<BTreeSet<ValuePair>> {
    require_leq(u, w)?;
    let n = u.n();
    let len_u = u.length();
    let mut raw = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (p, q) = (u.at(i), u.at(j));
            let t = u.swap_positions(i, j);
            if t.length().abs_diff(len_u) == 1 && t.bruhat_leq(w)? {
                raw.insert((p, q));
            }
        }
    }
    Ok(raw)
}

/// Transitive reduction of an acyclic digraph on `{1, ..., n}`.
///
/// An edge `(a, b)` is dropped iff `b` is reachable from `a` along a path of
/// length at least two. Cyclic input is rejected.
pub fn transitive_reduction(edges: &BTreeSet<ValuePair>, n: usize) -> Result<BTreeSet<ValuePair>> {
    let mut succ = vec![Vec::new(); n + 1];
    for &(a, b) in edges {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::Consistency(format!("edge ({a},{b}) outside 1..={n}")));
        }
        if a == b {
            return Err(Error::CycleDetected(a));
        }
        succ[a].push(b);
    }
    check_acyclic(&succ)?;

    let reaches = |from: usize, to: usize| -> bool {
        let mut seen = vec![false; n + 1];
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            for &y in &succ[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    };
    Ok(edges
        .iter()
        .copied()
        .filter(|&(a, b)| !succ[a].iter().any(|&c| c != b && reaches(c, b)))
        .collect())
}

fn check_acyclic(succ: &[Vec<usize>]) -> Result<()> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; succ.len()];
    for start in 1..succ.len() {
        if mark[start] != Mark::New {
            continue;
        }
        // iterative DFS; frames hold (node, next successor index)
        let mut stack = vec![(start, 0usize)];
        mark[start] = Mark::Active;
        while let Some(top) = stack.last_mut() {
            let x = top.0;
            if let Some(&y) = succ[x].get(top.1) {
                top.1 += 1;
                match mark[y] {
                    Mark::Active => return Err(Error::CycleDetected(y)),
                    Mark::New => {
                        mark[y] = Mark::Active;
                        stack.push((y, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[x] = Mark::Done;
                stack.pop();
            }
        }
    }
    Ok(())
}

/// `Ẽ_w(u)`, its transitive reduction `E_w(u)`, and the ascending/descending
/// split of the latter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruhatEdgeSet {
    pub u: Permutation,
    pub w: Permutation,
    pub raw: BTreeSet<ValuePair>,
    pub reduced: BTreeSet<ValuePair>,
    pub plus: BTreeSet<ValuePair>,
    pub minus: BTreeSet<ValuePair>,
}

impl BruhatEdgeSet {
    pub fn new(u: &Permutation, w: &Permutation) -> Result<Self> {
        let raw = raw_edges(u, w)?;
        let reduced = transitive_reduction(&raw, u.n())?;
        let (plus, minus) = reduced.iter().partition(|&&(p, q)| p < q);
        Ok(Self {
            u: u.clone(),
            w: w.clone(),
            raw,
            reduced,
            plus,
            minus,
        })
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// `a_w(u) = |E_w(u)⁺|`.
    pub fn ascent_count(&self) -> usize {
        self.plus.len()
    }

    /// Primitive direction `e_p − e_q` of the edge indexed by `(p, q)`.
    pub fn direction(&self, (p, q): ValuePair) -> Vec<i64> {
        let mut v = vec![0; self.n()];
        v[p - 1] = 1;
        v[q - 1] = -1;
        v
    }

    /// The neighbour `t_{p,q} u` across the edge indexed by `(p, q)`.
    pub fn neighbour(&self, (p, q): ValuePair) -> Permutation {
        self.u
            .apply_transposition(p, q)
            .expect("edge values lie in 1..=n")
    }

    /// No value carries two outgoing or two incoming ascending pairs.
    pub fn plus_degrees_bounded(&self) -> bool {
        let n = self.n();
        let mut out = vec![0; n + 1];
        let mut inc = vec![0; n + 1];
        for &(p, q) in &self.plus {
            out[p] += 1;
            inc[q] += 1;
        }
        out.iter().chain(&inc).all(|&d| d <= 1)
    }

    /// For every `(u(i), u(k))` in `E⁺` (resp. `E⁻`) no position `i < j < k`
    /// has `u(j)` strictly between the two values.
    pub fn no_intermediate_values(&self) -> bool {
        self.reduced.iter().all(|&(p, q)| {
            let (i, k) = (self.u.position_of(p), self.u.position_of(q));
            let (lo, hi) = (p.min(q), p.max(q));
            (i + 1..k).all(|j| {
                let x = self.u.at(j);
                !(lo < x && x < hi)
            })
        })
    }

    /// The directions `e_p − e_q` over `E⁺` are linearly independent.
    pub fn plus_directions_independent(&self) -> bool {
        let rows: Vec<_> = self.plus.iter().map(|&e| self.direction(e)).collect();
        lattice::rank(&rows) == rows.len()
    }

    /// Rank of the directions `e_p − e_q` over `E⁻`.
    pub fn minus_direction_rank(&self) -> usize {
        let rows: Vec<_> = self.minus.iter().map(|&e| self.direction(e)).collect();
        lattice::rank(&rows)
    }
}

pub fn edge_set(u: &Permutation, w: &Permutation) -> Result<BruhatEdgeSet> {
    BruhatEdgeSet::new(u, w)
}

pub fn ascent_count(u: &Permutation, w: &Permutation) -> Result<usize> {
    Ok(BruhatEdgeSet::new(u, w)?.ascent_count())
}

fn require_leq(u: &Permutation, w: &Permutation) -> Result<()> {
    if !u.bruhat_leq(w)? {
        return Err(Error::NotBruhatLeq {
            v: u.to_string(),
            w: w.to_string(),
        });
    }
    Ok(())
}

/// The graph `Γ_w(u)⁺` on positions `1..=n`, node `i` drawn at `(i, u(i))`,
/// with `{i, j}` joined when `(u(i), u(j)) ∈ E_w(u)⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AscentGraph {
    pub nodes: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
    /// Maximal ascents: increasing position lists, one per component,
    /// ordered by first position.
    pub components: Vec<Vec<usize>>,
}

impl AscentGraph {
    pub fn new(es: &BruhatEdgeSet) -> Result<Self> {
        let n = es.n();
        let u = &es.u;
        let nodes = (1..=n).map(|i| (i, u.at(i))).collect();
        let edges: Vec<(usize, usize)> = es
            .plus
            .iter()
            .map(|&(p, q)| (u.position_of(p), u.position_of(q)))
            .collect();

        let mut next = vec![None; n + 1];
        let mut has_pred = vec![false; n + 1];
        for &(i, j) in &edges {
            if next[i].replace(j).is_some() || std::mem::replace(&mut has_pred[j], true) {
                return Err(Error::Consistency(format!(
                    "ascent graph of u={} w={} has a branching node",
                    es.u, es.w
                )));
            }
        }
        let mut components = Vec::new();
        let mut covered = 0;
        for start in (1..=n).filter(|&i| !has_pred[i]) {
            let mut path = vec![start];
            let mut x = start;
            while let Some(y) = next[x] {
                if y <= x || path.len() > n {
                    return Err(Error::Consistency(format!(
                        "ascent graph of u={} w={} is not a union of paths",
                        es.u, es.w
                    )));
                }
                path.push(y);
                x = y;
            }
            covered += path.len();
            components.push(path);
        }
        if covered != n {
            return Err(Error::Consistency(format!(
                "ascent graph of u={} w={} contains a cycle",
                es.u, es.w
            )));
        }
        Ok(Self {
            nodes,
            edges,
            components,
        })
    }

    /// Index of the component containing position `i`.
    fn component_of(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.nodes.len() + 1];
        for (c, comp) in self.components.iter().enumerate() {
            for &i in comp {
                owner[i] = c;
            }
        }
        owner
    }

    /// `(I, I')` is non-empty: some `i ∈ I`, `i' ∈ I'` with `i < i'` and
    /// `u(i) > u(i')`.
    fn dominates(&self, a: usize, b: usize) -> bool {
        let value = |i: usize| self.nodes[i - 1].1;
        self.components[a].iter().any(|&i| {
            self.components[b]
                .iter()
                .any(|&j| i < j && value(i) > value(j))
        })
    }

    /// No two maximal ascents cross.
    pub fn non_crossing(&self) -> bool {
        let k = self.components.len();
        (0..k).all(|a| (a + 1..k).all(|b| !(self.dominates(a, b) && self.dominates(b, a))))
    }
}

pub fn ascent_graph(es: &BruhatEdgeSet) -> Result<AscentGraph> {
    AscentGraph::new(es)
}

/// A function `f: [n] → Z` constant along ascending pairs and strictly
/// decreasing along descending ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelFunction {
    /// `levels[p - 1] = f(p)`.
    levels: Vec<i64>,
}

impl LevelFunction {
    pub fn get(&self, value: usize) -> i64 {
        self.levels[value - 1]
    }

    pub fn as_vector(&self) -> &[i64] {
        &self.levels
    }

    pub fn satisfies(&self, es: &BruhatEdgeSet) -> bool {
        es.plus.iter().all(|&(p, q)| self.get(p) == self.get(q))
            && es.minus.iter().all(|&(p, q)| self.get(p) > self.get(q))
    }
}

/// Builds the level function from the maximal ascents: components are
/// partially ordered by `I > I'` when `(I, I')` is non-empty, the order is
/// extended to a total order (ties broken by smallest position), and the
/// components receive levels `k, k-1, ..., 1` from the top down.
pub fn level_function(es: &BruhatEdgeSet) -> Result<LevelFunction> {
    let graph = AscentGraph::new(es)?;
    let k = graph.components.len();
    let mut above = vec![Vec::new(); k];
    let mut indegree = vec![0usize; k];
    for a in 0..k {
        for b in 0..k {
            if a != b && graph.dominates(a, b) {
                if a < b && graph.dominates(b, a) {
                    return Err(Error::Consistency(format!(
                        "maximal ascents {:?} and {:?} cross (u={}, w={})",
                        graph.components[a], graph.components[b], es.u, es.w
                    )));
                }
                above[a].push(b);
                indegree[b] += 1;
            }
        }
    }
    // components are sorted by first position, so the smallest ready index
    // is the one containing the smallest position
    let mut ready: BTreeSet<usize> = (0..k).filter(|&c| indegree[c] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(c) = ready.pop_first() {
        order.push(c);
        for &b in &above[c] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if order.len() != k {
        return Err(Error::Consistency(format!(
            "order on maximal ascents is cyclic (u={}, w={})",
            es.u, es.w
        )));
    }
    let owner = graph.component_of();
    let mut level_of_component = vec![0i64; k];
    for (rank, &c) in order.iter().enumerate() {
        level_of_component[c] = (k - rank) as i64;
    }
    let mut levels = vec![0; es.n()];
    for i in 1..=es.n() {
        levels[es.u.at(i) - 1] = level_of_component[owner[i]];
    }
    let f = LevelFunction { levels };
    if !f.satisfies(es) {
        return Err(Error::Consistency(format!(
            "level function violates its constraints (u={}, w={})",
            es.u, es.w
        )));
    }
    Ok(f)
}

/// The members `x` of `[id, w]` whose vertices `x̄` minimise `⟨f, ·⟩` at the
/// value `⟨f, ū⟩`; these span the face of `Q_{id,w⁻¹}` cut out by the level
/// function. Fails if `ū` is not a minimiser.
pub fn level_face(
    es: &BruhatEdgeSet,
    f: &LevelFunction,
    lower_interval: &BruhatInterval,
) -> Result<Vec<Permutation>> {
    let height = |x: &Permutation| lattice::dot(f.as_vector(), &moment_point(x));
    let base = height(&es.u);
    let mut face = Vec::new();
    for x in lower_interval.members() {
        let hx = height(x);
        if hx < base {
            return Err(Error::Consistency(format!(
                "level function is not minimised at u={} (w={})",
                es.u, es.w
            )));
        }
        if hx == base {
            face.push(x.clone());
        }
    }
    Ok(face)
}

/// `ū = μ(u) = (u⁻¹(1), ..., u⁻¹(n))`.
pub fn moment_point(u: &Permutation) -> Vec<i64> {
    u.inverse().word().iter().map(|&x| x as i64).collect()
}
