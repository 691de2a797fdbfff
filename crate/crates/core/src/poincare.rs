//! The polynomials: `A_w(t)`, `A_{v,w}(t)`, Poincaré polynomials, the
//! Eulerian polynomials and Betti numbers of smooth toric varieties.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::bruhat_graph::BruhatEdgeSet;
use crate::error::{Error, Result};
use crate::permutation::{BruhatInterval, Permutation, MAX_ENUMERATION_RANK};
use crate::polytope::{convex_hull_with_limits, moment_polytope, moment_vertices, HullLimits};
use crate::retraction::{default_height, h_retraction, orient_by_h};

/// Integer polynomial in `t`; `coeffs[k]` is the coefficient of `t^k`.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// `Σ t^e` over the given exponents.
    pub fn from_exponents(exponents: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = Vec::new();
        for e in exponents {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += 1;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// `p(t²)`.
    pub fn at_t_squared(&self) -> Self {
        let mut coeffs = vec![0; (2 * self.coeffs.len()).saturating_sub(1)];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c;
        }
        Self::new(coeffs)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mag = c.unsigned_abs();
                let body = match (k, mag) {
                    (0, _) => mag.to_string(),
                    (1, 1) => "t".to_string(),
                    (1, _) => format!("{mag}t"),
                    (_, 1) => format!("t^{k}"),
                    _ => format!("{mag}t^{k}"),
                };
                (c < 0, body)
            })
            .enumerate()
            .map(|(i, (neg, body))| match (i, neg) {
                (0, false) => body,
                (0, true) => format!("-{body}"),
                (_, false) => format!(" + {body}"),
                (_, true) => format!(" - {body}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.concat())
        }
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// `A_w(t) = Σ_{u ≤ w} t^{a_w(u)}`.
pub fn a_polynomial(w: &Permutation) -> Result<IntPolynomial> {
    let iv = BruhatInterval::below(w)?;
    let counts = iv
        .members()
        .iter()
        .map(|u| BruhatEdgeSet::new(u, w).map(|es| es.ascent_count()))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::from_exponents(counts))
}

/// `P(Y_w, t) = A_w(t²)`.
pub fn poincare_polynomial(w: &Permutation) -> Result<IntPolynomial> {
    Ok(a_polynomial(w)?.at_t_squared())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichardsonPolynomial {
    pub polynomial: IntPolynomial,
    /// The default height function induces a retraction sequence on
    /// `Q_{v⁻¹,w⁻¹}`; only then is `A_{v,w}(t²)` a Poincaré polynomial.
    pub retraction_exists: bool,
}

/// `A_{v,w}(t)`: ascending-edge counts on the hull of `{ū : v ≤ u ≤ w}`
/// (that is, `Q_{v⁻¹,w⁻¹}`) under the default decreasing height.
pub fn richardson_polynomial(v: &Permutation, w: &Permutation, limits: &HullLimits) -> Result<RichardsonPolynomial> {
    let iv = BruhatInterval::new(v, w)?;
    let q = convex_hull_with_limits(&moment_vertices(&iv), limits)?;
    let a = default_height(v.n());
    let skel = orient_by_h(&q, &a)?;
    Ok(RichardsonPolynomial {
        polynomial: IntPolynomial::from_exponents(skel.ascents.iter().copied()),
        retraction_exists: h_retraction(&q, &a).is_ok(),
    })
}

/// `Σ_{u ∈ S_n} t^{des(u)}`, by direct enumeration.
pub fn eulerian_polynomial(n: usize) -> Result<IntPolynomial> {
    if n > MAX_ENUMERATION_RANK {
        return Err(Error::GuardExceeded {
            what: "rank n for enumeration of S_n",
            actual: n,
            limit: MAX_ENUMERATION_RANK,
        });
    }
    Ok(IntPolynomial::from_exponents(
        (0..n)
            .permutations(n)
            .map(|word| word.windows(2).filter(|p| p[0] > p[1]).count()),
    ))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `b_{2k} = Σ_{i=k}^{n} (-1)^{i-k} C(i,k) f_i`, returned as
/// `Σ b_{2k} t^{2k}`. Valid for smooth polytopes only.
pub fn betti_from_fvector(f: &[usize], n: usize) -> Result<IntPolynomial> {
    if f.len() != n + 1 || f[n] != 1 {
        return Err(Error::NotSmooth(format!(
            "expected f_0..f_{n} with f_{n} = 1, got {f:?}"
        )));
    }
    let mut coeffs = vec![0; 2 * n + 1];
    for k in 0..=n {
        let b: i64 = (k..=n)
            .map(|i| {
                let term = binomial(i, k) * f[i] as i64;
                if (i - k) % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        if b < 0 {
            return Err(Error::NotSmooth(format!("b_{} = {b} is negative", 2 * k)));
        }
        coeffs[2 * k] = b;
    }
    Ok(IntPolynomial::new(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSmoothness {
    pub u: Permutation,
    pub point: Vec<i64>,
    pub is_simple: bool,
    pub is_smooth: bool,
    /// `|E_w(u)⁻|` and the rank of its directions `e_p − e_q`.
    pub descending_edges: usize,
    pub descending_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub w: Permutation,
    pub vertices: Vec<VertexSmoothness>,
    pub all_smooth: bool,
    pub smooth_at_top: bool,
    /// Descending directions at `w̄` are linearly independent.
    pub top_descending_independent: bool,
    /// Descending directions are independent at every vertex.
    pub all_descending_independent: bool,
    /// Palindromicity of `P(Y_w, t)`, reported only when every vertex is
    /// smooth.
    pub palindromic: Option<bool>,
}

pub fn smoothness_report(w: &Permutation, limits: &HullLimits) -> Result<SmoothnessReport> {
    let iv = BruhatInterval::below(w)?;
    let q = moment_polytope(w, limits)?;
    let mut vertices = Vec::with_capacity(iv.len());
    for u in iv.members() {
        let es = BruhatEdgeSet::new(u, w)?;
        let point = crate::bruhat_graph::moment_point(u);
        let vi = q
            .vertex_index(&point)
            .ok_or_else(|| Error::Consistency(format!("moment point of {u} is not a vertex")))?;
        let c = q.classify_vertex(vi)?;
        vertices.push(VertexSmoothness {
            u: u.clone(),
            point,
            is_simple: c.is_simple,
            is_smooth: c.is_smooth,
            descending_edges: es.minus.len(),
            descending_rank: es.minus_direction_rank(),
        });
    }
    let all_smooth = vertices.iter().all(|v| v.is_smooth);
    let top = vertices.iter().find(|v| &v.u == w).expect("w is in [id, w]");
    let palindromic = if all_smooth {
        Some(poincare_polynomial(w)?.is_palindromic())
    } else {
        None
    };
    Ok(SmoothnessReport {
        w: w.clone(),
        smooth_at_top: top.is_smooth,
        top_descending_independent: top.descending_rank == top.descending_edges,
        all_descending_independent: vertices.iter().all(|v| v.descending_rank == v.descending_edges),
        all_smooth,
        palindromic,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Descent counts from the definition, over an independently generated
    /// list of permutations (Heap's algorithm).
    fn eulerian_by_heap(n: usize) -> Vec<i64> {
        fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k - 1 {
                heap(k - 1, a, out);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
            heap(k - 1, a, out);
        }
        let mut all = Vec::new();
        heap(n, &mut (0..n).collect(), &mut all);
        let mut c = vec![0; n.max(1)];
        for p in all {
            c[p.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
        }
        c
    }

    #[test]
    fn polynomial_basics() {
        let p = IntPolynomial::new(vec![1, 7, 11, 1, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 7, 11, 1]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.eval(1), 20);
        assert_eq!(p.at_t_squared().coeffs(), &[1, 0, 7, 0, 11, 0, 1]);
        assert_eq!(p.at_t_squared().to_string(), "1 + 7t^2 + 11t^4 + t^6");
        assert_eq!(IntPolynomial::new(vec![0, -1, 2]).to_string(), "-t + 2t^2");
        assert_eq!(IntPolynomial::new(vec![]).to_string(), "0");
        assert_eq!(IntPolynomial::new(vec![]).degree(), None);
        assert_eq!(IntPolynomial::one().at_t_squared(), IntPolynomial::one());
        assert!(!p.is_palindromic());
        assert!(IntPolynomial::new(vec![1, 4, 1]).is_palindromic());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,7,11,1]");
    }

    #[test]
    fn a_polynomials() {
        assert_eq!(a_polynomial(&perm("4231")).unwrap().coeffs(), &[1, 7, 11, 1]);
        assert_eq!(a_polynomial(&perm("3412")).unwrap().coeffs(), &[1, 5, 7, 1]);
        assert_eq!(a_polynomial(&perm("1234")).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(poincare_polynomial(&perm("4231")).unwrap().coeffs(), &[1, 0, 7, 0, 11, 0, 1]);
        assert_eq!(poincare_polynomial(&perm("321")).unwrap().coeffs(), &[1, 0, 4, 0, 1]);
        assert_eq!(poincare_polynomial(&perm("1")).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn eulerian() {
        assert_eq!(eulerian_polynomial(1).unwrap().coeffs(), &[1]);
        assert_eq!(eulerian_polynomial(3).unwrap().coeffs(), &[1, 4, 1]);
        assert_eq!(eulerian_polynomial(4).unwrap().coeffs(), &[1, 11, 11, 1]);
        for n in 1..=6 {
            assert_eq!(eulerian_polynomial(n).unwrap().coeffs(), eulerian_by_heap(n).as_slice());
        }
        assert!(eulerian_polynomial(9).is_err());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti_from_fvector(&[6, 6, 1], 2).unwrap().coeffs(), &[1, 0, 4, 0, 1]);
        assert_eq!(betti_from_fvector(&[1], 0).unwrap(), IntPolynomial::one());
        assert_eq!(betti_from_fvector(&[3, 3, 1], 2).unwrap().coeffs(), &[1, 0, 1, 0, 1]);
        assert!(betti_from_fvector(&[6, 6], 2).is_err());
        assert!(betti_from_fvector(&[6, 6, 2], 2).is_err());
        // pyramid f-vector: not smooth, b_2 = f_1 - 2 f_2 + 3 f_3 = 8 - 10 + 3
        let b = betti_from_fvector(&[5, 8, 5, 1], 3).unwrap();
        assert_eq!(b.coeff(2), 1);
        assert!(matches!(betti_from_fvector(&[4, 9, 5, 1], 3), Err(Error::NotSmooth(_))));
        let id = moment_polytope(&perm("1234"), &HullLimits::default()).unwrap();
        assert_eq!(betti_from_fvector(&id.fvector(), id.dim()).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn richardson() {
        let limits = HullLimits::default();
        for w in ["4231", "3412", "2413"] {
            let w = perm(w);
            let r = richardson_polynomial(&Permutation::identity(4), &w, &limits).unwrap();
            assert_eq!(r.polynomial, a_polynomial(&w).unwrap());
            assert!(r.retraction_exists);
        }
        let w = perm("3142");
        assert_eq!(richardson_polynomial(&w, &w, &limits).unwrap().polynomial, IntPolynomial::one());
        let r = richardson_polynomial(&perm("1324"), &perm("4231"), &limits).unwrap();
        assert_eq!(r.polynomial.eval(1), 16);
        assert!(!r.retraction_exists);
        assert!(richardson_polynomial(&perm("4231"), &perm("1324"), &limits).is_err());
    }

    #[test]
    fn smoothness() {
        let limits = HullLimits::default();
        let r = smoothness_report(&perm("4231"), &limits).unwrap();
        assert!(!r.all_smooth);
        assert_eq!(r.palindromic, None);
        let r = smoothness_report(&perm("321"), &limits).unwrap();
        assert_eq!(r.vertices.len(), 6);
        assert!(r.all_smooth && r.smooth_at_top);
        assert_eq!(r.palindromic, Some(true));
        let r = smoothness_report(&perm("1234"), &limits).unwrap();
        assert_eq!(r.vertices.len(), 1);
        assert!(r.all_smooth);
    }
}
