//! Property tests for the algebraic invariants of the kernel: exact arithmetic,
//! grafting, OSBB rewriting, Hall rewriting, the normal form `φ` and the
//! post-Lie structure.

use latalg::color::Color;
use latalg::dalg::symmetrize;
use latalg::hall::{hall_generate, is_hall, HallRewriter, Tern};
use latalg::lat::{lat1_instance, DComb, LatEngine, Shape};
use latalg::lincomb::LinComb;
use latalg::osbb::{expand_comb, OsbbRewriter};
use latalg::postlie::{bhat_basis, DerGenerator, GradedPostLieElement, PostLie};
use latalg::prelie::{nonplanar_graft, prelie_project, NonPlanarTree};
use latalg::rational::Rational;
use latalg::tree::{enumerate_trees_upto, graft_tree, graft_word, graft_word_recursive, PlanarTree};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero_int() -> impl Strategy<Value = Rational> {
    prop_oneof![-3i64..=-1, 1i64..=3].prop_map(Rational::from_int)
}

fn pick<T: Clone>(pool: &[T], i: usize) -> T {
    pool[i % pool.len()].clone()
}

thread_local! {
    static TREES_2C_3: Vec<PlanarTree> = enumerate_trees_upto(2, 3);
    static TREES_2C_5: Vec<PlanarTree> = enumerate_trees_upto(2, 5);
}

fn tree_upto_3(i: usize) -> PlanarTree {
    TREES_2C_3.with(|t| pick(t, i))
}

fn tree_upto_5(i: usize) -> PlanarTree {
    TREES_2C_5.with(|t| pick(t, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rational_order_is_compatible_with_addition(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.cmp(&b), (&a + &c).cmp(&(&b + &c)));
    }

    #[test]
    fn lincomb_is_a_vector_space(
        xs in prop::collection::vec((0usize..6, rational()), 0..6),
        ys in prop::collection::vec((0usize..6, rational()), 0..6),
        c in rational(),
    ) {
        let x: LinComb<usize> = xs.into_iter().collect();
        let y: LinComb<usize> = ys.into_iter().collect();
        prop_assert_eq!((x.clone() + y.clone()) - y.clone(), x.clone());
        prop_assert!((x.clone() - x.clone()).is_zero());
        let lhs = (x.clone() + y.clone()).scale(&c);
        let rhs = x.scale(&c) + y.scale(&c);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.iter().all(|(_, k)| !k.is_zero()));
    }

    #[test]
    fn closed_form_word_grafting_matches_the_recursion(
        word in prop::collection::vec(0usize..1000, 0..3),
        t in 0usize..1000,
    ) {
        let word: Vec<PlanarTree> = word.into_iter().map(tree_upto_3).collect();
        let t = tree_upto_3(t);
        prop_assert_eq!(graft_word(&word, &t), graft_word_recursive(&word, &t));
    }

    #[test]
    fn grafting_adds_vertex_counts(s in 0usize..1000, t in 0usize..1000) {
        let (s, t) = (tree_upto_3(s), tree_upto_3(t));
        let g = graft_tree(&s, &t);
        prop_assert_eq!(g.len(), t.vertex_count());
        prop_assert!(g.monomials().all(|r| r.vertex_count() == s.vertex_count() + t.vertex_count()));
    }

    #[test]
    fn osbb_rewrite_expands_back_to_the_word(word in prop::collection::vec(0u8..3, 0..6)) {
        let rw: OsbbRewriter<u8> = OsbbRewriter::new();
        let nf = rw.rewrite_word(&word);
        prop_assert!(nf.monomials().all(|w| w.is_ordered()));
        prop_assert_eq!(expand_comb(&nf), LinComb::monomial(word.clone()));
    }

    #[test]
    fn osbb_rewrite_fixes_symmetrized_words(word in prop::collection::vec(0u8..3, 0..6)) {
        let rw: OsbbRewriter<u8> = OsbbRewriter::new();
        let mut sorted = word.clone();
        sorted.sort();
        let sym = symmetrize(&sorted);
        let nf = rw.rewrite(&sym);
        prop_assert_eq!(nf.len(), 1);
        prop_assert!(nf.monomials().all(|w| w.blocks().len() <= 1));
    }

    #[test]
    fn hall_bracket_is_a_lie_triple_system(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let pool = hall_generate(2, 3);
        let m = |i: usize| LinComb::monomial(pick(&pool, i));
        let (u, v, w) = (m(i), m(j), m(k));
        let h: HallRewriter<Color> = HallRewriter::new();
        let skew = h.bracket(&u, &v, &w) + h.bracket(&v, &u, &w);
        prop_assert!(skew.is_zero());
        let cyclic = h.bracket(&u, &v, &w) + h.bracket(&v, &w, &u) + h.bracket(&w, &u, &v);
        prop_assert!(cyclic.is_zero());
        prop_assert!(h.bracket(&u, &v, &w).monomials().all(is_hall));
    }

    #[test]
    fn hall_rewriting_is_idempotent(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let atoms = [Tern::Atom(Color(0)), Tern::Atom(Color(1))];
        let inner = Tern::br(pick(&atoms, i), pick(&atoms, j), pick(&atoms, k));
        let m = Tern::br(pick(&atoms, k), inner, pick(&atoms, i + j));
        let h: HallRewriter<Color> = HallRewriter::new();
        let once = h.rewrite_monomial(&m);
        prop_assert_eq!(h.rewrite(&once), once);
    }

    #[test]
    fn prelie_projection_is_a_graft_homomorphism(s in 0usize..1000, t in 0usize..1000) {
        let (s, t) = (tree_upto_3(s), tree_upto_3(t));
        let lhs = prelie_project(&graft_tree(&s, &t));
        let rhs = nonplanar_graft(&NonPlanarTree::from_planar(&s), &NonPlanarTree::from_planar(&t));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_lands_in_b_and_is_idempotent(i in 0usize..10_000, c in nonzero_int()) {
        let e = LatEngine::new(2);
        let t = tree_upto_5(i);
        let v = e.phi_trees(&LinComb::term(t.clone(), c.clone()));
        prop_assert!(e.supported_on_b(&v));
        prop_assert_eq!(e.phi(&v), v.clone());
        prop_assert_eq!(e.phi_trees(&LinComb::monomial(t)).scale(&c), v);
    }

    #[test]
    fn d_coordinates_expand_back_to_the_tree(i in 0usize..10_000) {
        let e = LatEngine::new(2);
        let t = tree_upto_5(i);
        let d = e.tree_to_d(&t);
        prop_assert_eq!(e.expand_d_comb(&d), LinComb::monomial(t.clone()));
        prop_assert_eq!(d, e.tree_to_d_via_psi(&t));
    }

    #[test]
    fn phi_kills_lat_relations(i in 0usize..1000, j in 0usize..1000, k in 0usize..1000, l in 0usize..1000) {
        let e = LatEngine::new(2);
        let (w, x, y, z) = (tree_upto_3(i), tree_upto_3(j), tree_upto_3(k), tree_upto_3(l));
        prop_assert!(e.phi_trees(&lat1_instance(&x, &y, &z)).is_zero());
        let d = |t: &PlanarTree| e.tree_to_d(t);
        prop_assert!(e.phi(&e.lat1_relation(&d(&x), &d(&y), &d(&z))).is_zero());
        prop_assert!(e.phi(&e.lat2_relation(&d(&w), &d(&x), &d(&y), &d(&z))).is_zero());
    }
}

/// Random post-Lie elements over two colors: odd parts from B elements of
/// grade ≤ 2, even parts from generators of grade ≤ 3.
struct Pool {
    odd: Vec<Shape>,
    even: Vec<DerGenerator>,
    tests: Vec<Shape>,
}

impl Pool {
    fn new(e: &LatEngine) -> Self {
        let (odd, even) = bhat_basis(e, 3);
        Pool { odd: odd.into_iter().filter(|b| b.vertex_count() <= 2).collect(), even, tests: e.b_basis(3) }
    }

    fn element(&self, picks: &[(usize, i64)], trunc: usize) -> GradedPostLieElement {
        let mut odd: DComb = LinComb::zero();
        let mut even = LinComb::zero();
        for &(i, c) in picks {
            if i % 2 == 0 {
                odd.add_term(pick(&self.odd, i / 2), Rational::from_int(c));
            } else {
                even.add_term(pick(&self.even, i / 2), Rational::from_int(c));
            }
        }
        GradedPostLieElement::odd(odd, trunc).add(&GradedPostLieElement::even(even, trunc))
    }
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1000, -2i64..=2), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn post_lie_bracket_is_a_lie_bracket(a in picks(), b in picks(), c in picks()) {
        let e = LatEngine::new(2);
        let pool = Pool::new(&e);
        let pl = PostLie::new(&e);
        let (a, b, c) = (pool.element(&a, 5), pool.element(&b, 5), pool.element(&c, 5));
        let anti = pl.bracket(&a, &b).add(&pl.bracket(&b, &a));
        prop_assert!(pl.equivalent(&anti, &GradedPostLieElement::zero(5), &pool.tests));
        let jacobi = pl
            .bracket(&a, &pl.bracket(&b, &c))
            .add(&pl.bracket(&b, &pl.bracket(&c, &a)))
            .add(&pl.bracket(&c, &pl.bracket(&a, &b)));
        prop_assert!(pl.equivalent(&jacobi, &GradedPostLieElement::zero(5), &pool.tests));
        // σ is an automorphism of the bracket
        let lhs = pl.bracket(&a, &b).sigma();
        let rhs = pl.bracket(&a.sigma(), &b.sigma());
        prop_assert!(pl.equivalent(&lhs, &rhs, &pool.tests));
    }

    #[test]
    fn post_lie_identities_hold_on_mixed_elements(a in picks(), b in picks(), c in picks()) {
        let e = LatEngine::new(2);
        let pool = Pool::new(&e);
        let pl = PostLie::new(&e);
        let (a, b, c) = (pool.element(&a, 6), pool.element(&b, 6), pool.element(&c, 6));
        let m1 = Rational::from_int(-1);
        let lhs = pl.triangle(&a, &pl.bracket(&b, &c));
        let rhs = pl.bracket(&pl.triangle(&a, &b), &c).add(&pl.bracket(&b, &pl.triangle(&a, &c)));
        prop_assert!(pl.equivalent(&lhs, &rhs, &pool.tests));
        let lhs = pl.triangle(&pl.bracket(&a, &b), &c);
        let rhs = pl
            .triangle(&a, &pl.triangle(&b, &c))
            .add_scaled(&pl.triangle(&pl.triangle(&a, &b), &c), &m1)
            .add_scaled(&pl.triangle(&b, &pl.triangle(&a, &c)), &m1)
            .add(&pl.triangle(&pl.triangle(&b, &a), &c));
        prop_assert!(pl.equivalent(&lhs, &rhs, &pool.tests));
    }
}
