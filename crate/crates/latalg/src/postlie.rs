//! The ℤ₂-graded post-Lie algebra `Der(A) ⊕ A` of the free LAT algebra `A`.
//!
//! The odd part is spanned by the basis B; the even part by formal generators
//! `D_{x,y}` (`x > y` in the B order) acting by `D_{x,y}(z) = [x, y, z]`.
//! Relations among the generators are not quotiented, so two even elements
//! are compared as operators on a finite set of test elements
//! ([`PostLie::equivalent`]).
//!
//! Bracket and post-Lie product:
//!
//! | | bracket | `▶` |
//! |---|---|---|
//! | odd, odd | `[x,y] = D_{x,y}` | `x ▶ y = φ(x ⊳ y)` |
//! | even, odd | `[A,x] = −A(x)` | `A ▶ x = A(x)` |
//! | odd, even | `[x,A] = A(x)` | `x ▶ D_{y,z} = D_{x▶y,z} + D_{y,x▶z}` |
//! | even, even | `[A,B] = −A ▶ B` | `D_{x,y} ▶ D_{z,w} = D_{[x,y,z],w} + D_{z,[x,y,w]}` |
//!
//! Every element carries a truncation grade; terms above it are dropped and
//! the drop is recorded in [`GradedPostLieElement::truncated`]. All operations
//! are graded, so components at or below the truncation grade are exact.

use std::cell::RefCell;
use std::cmp::Ordering;

use rustc_hash::FxHashMap;

use crate::lat::{DComb, LatEngine, Shape};
use crate::linalg::Echelon;
use crate::lincomb::LinComb;
use crate::rational::Rational;

/// A generator `D_{x,y}` with `x > y` in the B order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DerGenerator {
    x: Shape,
    y: Shape,
}

impl DerGenerator {
    /// `D_{x,y}` normalized: `None` when `x = y`, otherwise a sign and the generator.
    pub fn new(x: &Shape, y: &Shape) -> Option<(Rational, DerGenerator)> {
        match LatEngine::cmp_b(x, y) {
            Ordering::Equal => None,
            Ordering::Greater => Some((Rational::one(), DerGenerator { x: x.clone(), y: y.clone() })),
            Ordering::Less => Some((Rational::from_int(-1), DerGenerator { x: y.clone(), y: x.clone() })),
        }
    }

    /// The larger argument.
    pub fn x(&self) -> &Shape {
        &self.x
    }

    /// The smaller argument.
    pub fn y(&self) -> &Shape {
        &self.y
    }

    /// `|x|_V + |y|_V`.
    pub fn grade(&self) -> usize {
        self.x.vertex_count() + self.y.vertex_count()
    }
}

/// An element `(A, x)` of `Der(A) ⊕ A`, truncated at a grade.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPostLieElement {
    /// The derivation part.
    pub even: LinComb<DerGenerator>,
    /// The LAT part, in B coordinates.
    pub odd: DComb,
    /// Terms of higher grade are dropped.
    pub truncation: usize,
    /// True iff some operation producing this value dropped a term.
    pub truncated: bool,
}

impl GradedPostLieElement {
    /// The zero element.
    pub fn zero(truncation: usize) -> Self {
        GradedPostLieElement { even: LinComb::zero(), odd: LinComb::zero(), truncation, truncated: false }
    }

    /// A purely odd element.
    pub fn odd(v: DComb, truncation: usize) -> Self {
        let mut e = Self::zero(truncation);
        e.odd = v;
        e.truncate()
    }

    /// A purely even element.
    pub fn even(v: LinComb<DerGenerator>, truncation: usize) -> Self {
        let mut e = Self::zero(truncation);
        e.even = v;
        e.truncate()
    }

    /// True iff both parts vanish.
    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// The involution `σ(A, x) = (A, −x)`.
    pub fn sigma(&self) -> Self {
        GradedPostLieElement { odd: -self.odd.clone(), ..self.clone() }
    }

    /// Sum of two elements.
    pub fn add(&self, other: &Self) -> Self {
        GradedPostLieElement {
            even: self.even.clone() + other.even.clone(),
            odd: self.odd.clone() + other.odd.clone(),
            truncation: self.truncation.min(other.truncation),
            truncated: self.truncated || other.truncated,
        }
        .truncate()
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: &Rational) -> Self {
        self.add(&other.scale(c))
    }

    /// `c·self`.
    pub fn scale(&self, c: &Rational) -> Self {
        GradedPostLieElement { even: self.even.scale(c), odd: self.odd.scale(c), ..self.clone() }
    }

    fn truncate(mut self) -> Self {
        let t = self.truncation;
        let even = self.even.filter(|d| d.grade() <= t);
        let odd = self.odd.filter(|x| x.vertex_count() <= t);
        if even.len() != self.even.len() || odd.len() != self.odd.len() {
            self.truncated = true;
        }
        self.even = even;
        self.odd = odd;
        self
    }
}

/// Operations of the post-Lie algebra, backed by a [`LatEngine`].
pub struct PostLie<'a> {
    lat: &'a LatEngine,
    product_memo: RefCell<FxHashMap<(Shape, Shape), DComb>>,
    triple_memo: RefCell<FxHashMap<(Shape, Shape, Shape), DComb>>,
}

impl<'a> PostLie<'a> {
    /// Post-Lie operations over the LAT algebra of `lat`.
    pub fn new(lat: &'a LatEngine) -> Self {
        PostLie { lat, product_memo: RefCell::default(), triple_memo: RefCell::default() }
    }

    /// The underlying engine.
    pub fn lat(&self) -> &LatEngine {
        self.lat
    }

    /// The LAT product `φ(x ⊳ y)` of two B elements.
    pub fn lat_product(&self, x: &Shape, y: &Shape) -> DComb {
        let key = (x.clone(), y.clone());
        if let Some(v) = self.product_memo.borrow().get(&key) {
            return v.clone();
        }
        let p = self.lat.product(&self.lat.to_d(x), &self.lat.to_d(y));
        let out = self.lat.phi(&p);
        self.product_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// The LAT triple bracket `φ([x, y, z])` of three B elements.
    pub fn lat_triple(&self, x: &Shape, y: &Shape, z: &Shape) -> DComb {
        let key = (x.clone(), y.clone(), z.clone());
        if let Some(v) = self.triple_memo.borrow().get(&key) {
            return v.clone();
        }
        let b = self.lat.bracket_d(&self.lat.to_d(x), &self.lat.to_d(y), &self.lat.to_d(z));
        let out = self.lat.phi(&b);
        self.triple_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `φ(x ⊳ y)` extended bilinearly.
    pub fn product_comb(&self, x: &DComb, y: &DComb) -> DComb {
        let mut out = LinComb::zero();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                out.add_scaled(&self.lat_product(p, q), &(a * b));
            }
        }
        out
    }

    /// `φ([x, y, z])` extended trilinearly.
    pub fn triple_comb(&self, x: &DComb, y: &DComb, z: &DComb) -> DComb {
        let mut out = LinComb::zero();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                let ab = a * b;
                for (r, c) in z.iter() {
                    out.add_scaled(&self.lat_triple(p, q, r), &(&ab * c));
                }
            }
        }
        out
    }

    /// `D_{x,y}` extended bilinearly to combinations of B elements.
    pub fn der(&self, x: &DComb, y: &DComb) -> LinComb<DerGenerator> {
        let mut out = LinComb::zero();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                if let Some((s, d)) = DerGenerator::new(p, q) {
                    out.add_term(d, &(a * b) * &s);
                }
            }
        }
        out
    }

    /// `A(z)` for a derivation `A` and a LAT element `z`.
    pub fn apply(&self, a: &LinComb<DerGenerator>, z: &DComb) -> DComb {
        let mut out = LinComb::zero();
        for (d, c) in a.iter() {
            let t = self.triple_comb(&LinComb::monomial(d.x.clone()), &LinComb::monomial(d.y.clone()), z);
            out.add_scaled(&t, c);
        }
        out
    }

    /// `A ▶ B = A∘B − B∘A`, as generators.
    fn der_triangle_der(&self, a: &LinComb<DerGenerator>, b: &LinComb<DerGenerator>) -> LinComb<DerGenerator> {
        let mut out = LinComb::zero();
        for (d, c) in b.iter() {
            let z = LinComb::monomial(d.x.clone());
            let w = LinComb::monomial(d.y.clone());
            out.add_scaled(&self.der(&self.apply(a, &z), &w), c);
            out.add_scaled(&self.der(&z, &self.apply(a, &w)), c);
        }
        out
    }

    /// `x ▶ A` for a LAT element `x` and a derivation `A`.
    fn odd_triangle_der(&self, x: &DComb, a: &LinComb<DerGenerator>) -> LinComb<DerGenerator> {
        let mut out = LinComb::zero();
        for (d, c) in a.iter() {
            let y = LinComb::monomial(d.x.clone());
            let z = LinComb::monomial(d.y.clone());
            out.add_scaled(&self.der(&self.product_comb(x, &y), &z), c);
            out.add_scaled(&self.der(&y, &self.product_comb(x, &z)), c);
        }
        out
    }

    fn assemble(&self, p: &GradedPostLieElement, q: &GradedPostLieElement, even: LinComb<DerGenerator>, odd: DComb) -> GradedPostLieElement {
        GradedPostLieElement {
            even,
            odd,
            truncation: p.truncation.min(q.truncation),
            truncated: p.truncated || q.truncated,
        }
        .truncate()
    }

    /// The Lie bracket of `Der(A) ⊕ A`.
    pub fn bracket(&self, p: &GradedPostLieElement, q: &GradedPostLieElement) -> GradedPostLieElement {
        // [A,B] = −A▶B ; [x,y] = D_{x,y}
        let mut even = -self.der_triangle_der(&p.even, &q.even);
        even.add_assign_ref(&self.der(&p.odd, &q.odd));
        // [A,y] = −A(y) ; [x,B] = B(x)
        let mut odd = -self.apply(&p.even, &q.odd);
        odd.add_assign_ref(&self.apply(&q.even, &p.odd));
        self.assemble(p, q, even, odd)
    }

    /// The post-Lie product `▶`.
    pub fn triangle(&self, p: &GradedPostLieElement, q: &GradedPostLieElement) -> GradedPostLieElement {
        let mut even = self.der_triangle_der(&p.even, &q.even);
        even.add_assign_ref(&self.odd_triangle_der(&p.odd, &q.even));
        let mut odd = self.apply(&p.even, &q.odd);
        odd.add_assign_ref(&self.product_comb(&p.odd, &q.odd));
        self.assemble(p, q, even, odd)
    }

    /// The Lie admissible product `x ⊳ y = x ▶ y + ½[x, y]`.
    pub fn lie_admissible(&self, p: &GradedPostLieElement, q: &GradedPostLieElement) -> GradedPostLieElement {
        self.triangle(p, q).add_scaled(&self.bracket(p, q), &Rational::new(1, 2))
    }

    /// Equality as elements of `Der(A) ⊕ A`: equal odd parts, and even parts
    /// acting identically on every element of `tests`.
    pub fn equivalent(&self, p: &GradedPostLieElement, q: &GradedPostLieElement, tests: &[Shape]) -> bool {
        if p.odd != q.odd {
            return false;
        }
        let diff = p.even.clone() - q.even.clone();
        tests.iter().all(|t| self.apply(&diff, &LinComb::monomial(t.clone())).is_zero())
    }
}

/// The basis `B̂` of `Der(A) ⊕ A` up to a grade: B elements (odd part) and
/// generators `D_{x,y}` with `x > y` (even part), each grouped by grade.
pub fn bhat_basis(lat: &LatEngine, max_grade: usize) -> (Vec<Shape>, Vec<DerGenerator>) {
    let odd = lat.b_basis(max_grade);
    let mut even = Vec::new();
    for g in 2..=max_grade {
        for x in &odd {
            for y in &odd {
                if x.vertex_count() + y.vertex_count() == g && LatEngine::cmp_b(x, y) == Ordering::Greater {
                    even.push(DerGenerator { x: x.clone(), y: y.clone() });
                }
            }
        }
    }
    (odd, even)
}

/// Linear independence of the generators `D_{x,y}` of one grade as operators:
/// returns `(number of generators, rank of their actions on all B elements of
/// grade ≤ test_max_grade)`. Equal numbers mean the generators of that grade
/// induce independent derivations (on the tested range).
pub fn derivation_action_rank(lat: &LatEngine, grade: usize, test_max_grade: usize) -> (usize, usize) {
    let pl = PostLie::new(lat);
    let (_, even) = bhat_basis(lat, grade);
    let tests = lat.b_basis(test_max_grade);
    let mut ech: Echelon<(usize, Shape)> = Echelon::new();
    let gens: Vec<&DerGenerator> = even.iter().filter(|d| d.grade() == grade).collect();
    for d in &gens {
        let a = LinComb::monomial((*d).clone());
        let mut row = LinComb::zero();
        for (i, t) in tests.iter().enumerate() {
            for (m, c) in pl.apply(&a, &LinComb::monomial(t.clone())).iter() {
                row.add_term((i, m.clone()), c.clone());
            }
        }
        ech.insert(&row);
    }
    (gens.len(), ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Color;

    #[test]
    fn bhat_counts_one_color() {
        let e = LatEngine::new(1);
        let (odd, even) = bhat_basis(&e, 3);
        assert_eq!(odd.len(), 1 + 1 + 2);
        assert_eq!(even.iter().filter(|d| d.grade() == 2).count(), 0);
        assert_eq!(even.iter().filter(|d| d.grade() == 3).count(), 1);
    }

    #[test]
    fn bracket_table_basics() {
        let e = LatEngine::new(2);
        let pl = PostLie::new(&e);
        let a = Shape::color(Color(0));
        let b = Shape::color(Color(1));
        let x = GradedPostLieElement::odd(LinComb::monomial(a.clone()), 5);
        let y = GradedPostLieElement::odd(LinComb::monomial(b.clone()), 5);
        assert!(pl.bracket(&x, &x).is_zero());
        let d = pl.bracket(&x, &y);
        assert!(d.odd.is_zero());
        assert_eq!(d.even.len(), 1);
        // [D_{a,b}, a] = −[a, b, a]
        let r = pl.bracket(&d, &x);
        assert_eq!(r.odd, -pl.lat_triple(&a, &b, &a));
        // x ▶ y is the LAT product
        assert_eq!(pl.triangle(&x, &y).odd, pl.lat_product(&a, &b));
    }

    #[test]
    fn generators_are_independent_only_at_low_grade() {
        let e = LatEngine::new(2);
        assert_eq!(derivation_action_rank(&e, 2, 3), (1, 1));
        assert_eq!(derivation_action_rank(&e, 3, 3), (8, 8));
        assert_eq!(derivation_action_rank(&e, 4, 3), (38, 37));
        let e1 = LatEngine::new(1);
        assert_eq!(derivation_action_rank(&e1, 5, 3), (7, 7));
        assert_eq!(derivation_action_rank(&e1, 6, 3), (19, 18));
    }

    #[test]
    fn self_commutator_is_a_relation_among_generators() {
        // D ▶ D = [D, D] as an operator; it vanishes, but its expansion
        // D_{[a,b,a],b} + D_{a,[a,b,b]} is formally nonzero
        let e = LatEngine::new(2);
        let pl = PostLie::new(&e);
        let a = LinComb::monomial(Shape::color(Color(0)));
        let b = LinComb::monomial(Shape::color(Color(1)));
        let d = GradedPostLieElement::even(pl.der(&a, &b), 6);
        let dd = pl.triangle(&d, &d);
        assert!(!dd.even.is_zero());
        assert!(pl.equivalent(&dd, &GradedPostLieElement::zero(6), &e.b_basis(4)));
    }

    #[test]
    fn truncation_is_recorded() {
        let e = LatEngine::new(1);
        let pl = PostLie::new(&e);
        let a = Shape::color(Color(0));
        let x = GradedPostLieElement::odd(LinComb::monomial(a), 1);
        let p = pl.triangle(&x, &x);
        assert!(p.is_zero());
        assert!(p.truncated);
    }
}
