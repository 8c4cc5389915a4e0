//! Enumeration of the S and D bases, their expansion into planar trees, and
//! the change of basis ψ.

use super::shape::{Root, Shape};
use super::{DComb, LatEngine};
use crate::color::Color;
use crate::dalg::{graft, symmetrize, triple_bracket};
use crate::lincomb::{multilinear, LinComb};
use crate::osbb::expand;
use crate::rational::Rational;
use crate::tree::{PlanarTree, TreeComb};

/// All multisets (sorted descending) of elements of `items` with total vertex
/// count `total`, using only items with index ≥ `min_idx`.
///
/// `items` must be sorted ascending.
pub(crate) fn weighted_multisets(items: &[Shape], total: usize, min_idx: usize) -> Vec<Vec<Shape>> {
    fn rec(items: &[Shape], hi: usize, lo: usize, remaining: usize, cur: &mut Vec<Shape>, out: &mut Vec<Vec<Shape>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (lo..hi).rev() {
            let g = items[i].vertex_count();
            if g <= remaining {
                cur.push(items[i].clone());
                rec(items, i + 1, lo, remaining - g, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(items, items.len(), min_idx.min(items.len()), total, &mut Vec::new(), &mut out);
    out
}

impl LatEngine {
    fn colors(&self) -> impl Iterator<Item = Color> {
        (0..self.n_colors).map(|c| Color(c as u16))
    }

    /// The S (equivalently D) basis elements with exactly `grade` vertices, in `≺_S` order.
    pub fn shapes_of_grade(&self, grade: usize) -> Vec<Shape> {
        loop {
            let have = self.shapes_memo.borrow().len();
            if have > grade {
                return self.shapes_memo.borrow()[grade].clone();
            }
            let layer = if have == 0 { Vec::new() } else { self.build_grade(have) };
            self.shapes_memo.borrow_mut().push(layer);
        }
    }

    fn build_grade(&self, grade: usize) -> Vec<Shape> {
        let lower: Vec<Shape> = self.shapes_memo.borrow()[1..grade].iter().flatten().cloned().collect();
        let mut out = Vec::new();
        for c in self.colors() {
            for xs in weighted_multisets(&lower, grade - 1, 0) {
                out.push(Shape::sym(xs, c));
            }
        }
        // bracket roots: 𝔰(X)·[y, z]·ω with z ≤ X, y > z
        for (zi, z) in lower.iter().enumerate() {
            for y in lower[zi + 1..].iter() {
                let used = y.vertex_count() + z.vertex_count();
                if used >= grade {
                    continue;
                }
                for t in lower.iter().filter(|t| t.vertex_count() <= grade - used) {
                    let gx = grade - used - t.vertex_count();
                    for xs in weighted_multisets(&lower, gx, zi) {
                        out.push(Shape::sym_br(xs, y.clone(), z.clone(), t.clone()));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// All basis shapes with at most `max_vertices` vertices, in `≺_S` order.
    pub fn s_basis(&self, max_vertices: usize) -> Vec<Shape> {
        (1..=max_vertices).flat_map(|g| self.shapes_of_grade(g)).collect()
    }

    /// The D basis up to `max_vertices`, ordered by the transported order (the same shapes).
    pub fn d_basis(&self, max_vertices: usize) -> Vec<Shape> {
        self.s_basis(max_vertices)
    }

    /// The S-reading of a shape expanded in the planar tree basis.
    pub fn expand_s(&self, x: &Shape) -> TreeComb {
        if let Some(v) = self.expand_s_memo.borrow().get(x) {
            return v.clone();
        }
        let (w, c) = x.s_word();
        let mut out = LinComb::zero();
        for (word, k) in expand(&w).iter() {
            let parts: Vec<TreeComb> = word.iter().map(|a| self.expand_s(a)).collect();
            for (trees, d) in multilinear(&parts) {
                out.add_term(PlanarTree::from_parts(c, &trees), k * &d);
            }
        }
        self.expand_s_memo.borrow_mut().insert(x.clone(), out.clone());
        out
    }

    /// The D-reading of a shape expanded in the planar tree basis.
    pub fn expand_d(&self, x: &Shape) -> TreeComb {
        if let Some(v) = self.expand_d_memo.borrow().get(x) {
            return v.clone();
        }
        let words = self.sym_tree_words(x.forest());
        let out = match x.root() {
            Root::Color(c) => {
                let mut out = LinComb::zero();
                for (trees, k) in words.iter() {
                    out.add_term(PlanarTree::from_parts(*c, trees), k.clone());
                }
                out
            }
            Root::Bracket(y, z, t) => {
                let tb = triple_bracket(&self.expand_d(y), &self.expand_d(z), &self.expand_d(t));
                if x.forest().is_empty() {
                    tb
                } else {
                    graft(&words, &tb)
                }
            }
        };
        self.expand_d_memo.borrow_mut().insert(x.clone(), out.clone());
        out
    }

    /// `𝔰(X)` as a combination of words of trees, each letter D-expanded.
    fn sym_tree_words(&self, xs: &[Shape]) -> LinComb<Vec<PlanarTree>> {
        let mut out = LinComb::zero();
        for (w, k) in symmetrize(xs).iter() {
            let parts: Vec<TreeComb> = w.iter().map(|a| self.expand_d(a)).collect();
            for (trees, d) in multilinear(&parts) {
                out.add_term(trees, k * &d);
            }
        }
        out
    }

    /// S coordinates of a planar tree.
    pub fn tree_to_s(&self, t: &PlanarTree) -> DComb {
        if let Some(v) = self.tree_s_memo.borrow().get(t) {
            return v.clone();
        }
        let children: Vec<DComb> = t.branches().iter().map(|b| self.tree_to_s(b)).collect();
        let mut words: LinComb<Vec<Shape>> = LinComb::zero();
        for (w, c) in multilinear(&children) {
            words.add_term(w, c);
        }
        let c = t.root_color();
        let out = self.osbb.rewrite(&words).map_monomials(|w| Shape::from_s_word(w, c));
        self.tree_s_memo.borrow_mut().insert(t.clone(), out.clone());
        out
    }

    /// S coordinates of a combination of trees.
    pub fn trees_to_s(&self, v: &TreeComb) -> DComb {
        v.substitute(|t| self.tree_to_s(t))
    }

    /// `ψ(x)` in S coordinates: the D-reading of `x` re-expressed in the S basis.
    pub fn psi_s(&self, x: &Shape) -> DComb {
        self.trees_to_s(&self.expand_d(x))
    }

    /// The matrix of ψ on one grade: `m[i][j]` is the coefficient of basis
    /// element `i` in `ψ(basis[j])`. Returns the ordered basis with the matrix.
    pub fn psi_matrix(&self, grade: usize) -> (Vec<Shape>, Vec<Vec<Rational>>) {
        let basis = self.shapes_of_grade(grade);
        let n = basis.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        let index: rustc_hash::FxHashMap<&Shape, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        for (j, b) in basis.iter().enumerate() {
            for (s, c) in self.psi_s(b).iter() {
                m[index[s]][j] = c.clone();
            }
        }
        (basis, m)
    }

    /// Converts S coordinates to D coordinates by inverting ψ (unit triangular).
    pub fn d_from_s(&self, v: &DComb) -> DComb {
        let mut rest = v.clone();
        let mut out = LinComb::zero();
        while let Some((m, a)) = rest.max_term_by(|x, y| x.cmp(y)) {
            rest.add_scaled(&self.psi_s(&m), &-a.clone());
            debug_assert!(rest.coeff(&m).is_zero(), "ψ has unit diagonal");
            out.add_term(m, a);
        }
        out
    }

    /// D coordinates of a tree computed through the S basis and `ψ⁻¹`.
    pub fn tree_to_d_via_psi(&self, t: &PlanarTree) -> DComb {
        self.d_from_s(&self.tree_to_s(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    #[test]
    fn basis_counts_match_trees() {
        let e = LatEngine::new(1);
        let counts: Vec<usize> = (1..=6).map(|g| e.shapes_of_grade(g).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
        let e2 = LatEngine::new(2);
        for g in 1..=4 {
            assert_eq!(e2.shapes_of_grade(g).len(), enumerate_trees(2, g).len());
        }
    }

    #[test]
    fn shapes_are_valid_and_sorted() {
        let e = LatEngine::new(2);
        for g in 1..=5 {
            let v = e.shapes_of_grade(g);
            assert!(v.iter().all(Shape::is_valid));
            assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn tree_to_s_inverts_expand_s() {
        let e = LatEngine::new(2);
        for g in 1..=4 {
            for s in e.shapes_of_grade(g) {
                assert_eq!(e.trees_to_s(&e.expand_s(&s)), LinComb::monomial(s.clone()));
            }
        }
    }

    #[test]
    fn psi_is_unit_upper_triangular() {
        let e = LatEngine::new(1);
        for g in 1..=5 {
            let (_, m) = e.psi_matrix(g);
            for i in 0..m.len() {
                assert!(m[i][i].is_one(), "grade {g} diagonal {i}");
                for j in 0..i {
                    assert!(m[i][j].is_zero(), "grade {g} entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn native_d_coordinates_agree_with_psi_inverse() {
        for n in 1..=2 {
            let e = LatEngine::new(n);
            let max = if n == 1 { 6 } else { 4 };
            for g in 1..=max {
                for t in enumerate_trees(n, g) {
                    assert_eq!(e.tree_to_d(&t), e.tree_to_d_via_psi(&t), "tree {t:?}");
                }
            }
        }
    }

    #[test]
    fn expand_d_roundtrip() {
        let e = LatEngine::new(2);
        for g in 1..=4 {
            for s in e.shapes_of_grade(g) {
                assert_eq!(e.trees_to_d(&e.expand_d(&s)), LinComb::monomial(s.clone()), "{s:?}");
            }
        }
    }
}
