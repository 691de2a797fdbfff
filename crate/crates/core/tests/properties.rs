use bruhat_poincare::bruhat_graph::{level_face, level_function, moment_point};
use bruhat_poincare::lattice;
use bruhat_poincare::poincare::{a_polynomial, eulerian_polynomial, richardson_polynomial};
use bruhat_poincare::polytope::{convex_hull, moment_polytope, HullLimits};
use bruhat_poincare::retraction::{ascending_face, default_height, orient_by_h, search_retraction, validate};
use bruhat_poincare::{AscentGraph, BruhatEdgeSet, BruhatInterval, LatticePoint, Permutation};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|w| Permutation::new(w).unwrap())
}

/// A random `w` in S_5 or S_6 and a random `u ≤ w`.
fn pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (5usize..=6)
        .prop_flat_map(permutation)
        .prop_flat_map(|w| {
            let len = BruhatInterval::below(&w).unwrap().len();
            (Just(w), 0..len)
        })
        .prop_map(|(w, i)| {
            let u = BruhatInterval::below(&w).unwrap().members()[i].clone();
            (u, w)
        })
}

fn s4() -> Vec<Permutation> {
    Permutation::all(4).unwrap().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_set_invariants((u, w) in pair()) {
        let es = BruhatEdgeSet::new(&u, &w).unwrap();
        prop_assert!(es.plus_degrees_bounded());
        prop_assert!(es.no_intermediate_values());
        prop_assert!(es.plus_directions_independent());
        prop_assert!(AscentGraph::new(&es).unwrap().non_crossing());
        let f = level_function(&es).unwrap();
        prop_assert!(f.satisfies(&es));
        // reduced edges connect u to members of the interval
        let iv = BruhatInterval::below(&w).unwrap();
        for &e in &es.reduced {
            prop_assert!(iv.contains(&es.neighbour(e)));
        }
    }

    #[test]
    fn a_polynomial_counts_the_interval(w in (5usize..=6).prop_flat_map(permutation)) {
        let a = a_polynomial(&w).unwrap();
        prop_assert_eq!(a.eval(1), BruhatInterval::below(&w).unwrap().len() as i64);
        // the identity has every edge ascending, w has none
        prop_assert_eq!(a.coeff(0), 1);
    }

    #[test]
    fn hull_contains_its_points(
        pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..12)
    ) {
        let points: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::new).collect();
        let q = convex_hull(&points).unwrap();
        for p in &points {
            for f in q.facets() {
                prop_assert!(lattice::dot(&f.normal, p) <= f.offset);
            }
        }
        for v in q.vertices() {
            prop_assert!(points.contains(v));
        }
        prop_assert!(q.satisfies_euler_relation());
        prop_assert!(q.face_lattice_closed());
    }

    #[test]
    fn found_sequences_are_valid(
        pts in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 4..9)
    ) {
        let points: Vec<LatticePoint> = pts.into_iter().map(LatticePoint::new).collect();
        let q = convex_hull(&points).unwrap();
        if let Some(seq) = search_retraction(&q).unwrap() {
            prop_assert!(validate(&q, &seq).is_ok());
            prop_assert_eq!(seq.len(), q.vertices().len());
            prop_assert_eq!(seq.steps[0].step_dim, q.dim());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The face cut out by the level function is the hull face spanned by
    /// the ascending edges (S_5, hull-backed, so few cases).
    #[test]
    fn level_face_is_the_ascending_face(w in permutation(5), pick in any::<prop::sample::Index>()) {
        let iv = BruhatInterval::below(&w).unwrap();
        let u = &iv.members()[pick.index(iv.len())];
        let q = moment_polytope(&w, &HullLimits::default()).unwrap();
        let skel = orient_by_h(&q, &default_height(5)).unwrap();
        let vi = q.vertex_index(&moment_point(u)).unwrap();
        let face = ascending_face(&q, &skel, vi).unwrap();
        let es = BruhatEdgeSet::new(u, &w).unwrap();
        let f = level_function(&es).unwrap();
        let mut got: Vec<Vec<i64>> = level_face(&es, &f, &iv).unwrap().iter().map(moment_point).collect();
        got.sort();
        let mut want: Vec<Vec<i64>> = q.face(face).vertices.iter().map(|&i| q.vertices()[i].to_vec()).collect();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn simple_iff_smooth_on_s4_bruhat_interval_polytopes() {
    for w in s4() {
        let q = moment_polytope(&w, &HullLimits::default()).unwrap();
        for v in 0..q.vertices().len() {
            let c = q.classify_vertex(v).unwrap();
            assert_eq!(c.is_simple, c.is_smooth, "w={w} vertex {:?}", q.vertices()[v]);
        }
    }
}

#[test]
fn richardson_from_identity_is_the_a_polynomial() {
    let limits = HullLimits::default();
    for w in s4() {
        let id = Permutation::identity(4);
        let r = richardson_polynomial(&id, &w, &limits).unwrap();
        assert_eq!(r.polynomial, a_polynomial(&w).unwrap(), "w={w}");
        assert!(r.retraction_exists, "w={w}");
    }
}

#[test]
fn richardson_trivial_interval() {
    let w: Permutation = "3412".parse().unwrap();
    let r = richardson_polynomial(&w, &w, &HullLimits::default()).unwrap();
    assert_eq!(r.polynomial.coeffs(), [1]);
}

#[test]
fn longest_element_gives_the_eulerian_polynomial_for_small_n() {
    for n in 1..=4 {
        assert_eq!(a_polynomial(&Permutation::longest(n)).unwrap(), eulerian_polynomial(n).unwrap());
    }
}
