//! The free pre-Lie algebra on non-planar rooted trees, and the projection
//! from planar trees that forgets branch order.
//!
//! The projection is a homomorphism for grafting and kills every triple
//! bracket, so it factors through the free LAT algebra.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::color::{Alphabet, Color};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::tree::{PlanarTree, TreeComb};

#[derive(PartialEq, Eq, Hash)]
struct Node {
    vertices: usize,
    color: Color,
    branches: Vec<NonPlanarTree>,
}

/// A rooted tree whose branches are unordered, stored canonically
/// (branches sorted descending).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NonPlanarTree(Arc<Node>);

impl NonPlanarTree {
    /// A single vertex.
    pub fn node(c: Color) -> Self {
        Self::new(c, Vec::new())
    }

    /// A root of color `c` with the given branches, in any order.
    pub fn new(color: Color, mut branches: Vec<NonPlanarTree>) -> Self {
        branches.sort_by(|a, b| b.cmp(a));
        let vertices = 1 + branches.iter().map(NonPlanarTree::vertex_count).sum::<usize>();
        NonPlanarTree(Arc::new(Node { vertices, color, branches }))
    }

    /// The root color.
    pub fn root_color(&self) -> Color {
        self.0.color
    }

    /// The branches, sorted descending.
    pub fn branches(&self) -> &[NonPlanarTree] {
        &self.0.branches
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.0.vertices
    }

    /// The tree obtained by forgetting the branch order of a planar tree.
    pub fn from_planar(t: &PlanarTree) -> Self {
        Self::new(t.root_color(), t.branches().iter().map(Self::from_planar).collect())
    }

    /// Rendering in the planar tree syntax with canonical branch order.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let name = alphabet.name(self.root_color());
        if self.branches().is_empty() {
            name.to_string()
        } else {
            let inner: Vec<String> = self.branches().iter().map(|b| b.render(alphabet)).collect();
            format!("{name}({})", inner.join(", "))
        }
    }
}

impl Ord for NonPlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.vertex_count()
            .cmp(&other.vertex_count())
            .then_with(|| self.root_color().cmp(&other.root_color()))
            .then_with(|| self.branches().len().cmp(&other.branches().len()))
            .then_with(|| self.branches().cmp(other.branches()))
    }
}

impl PartialOrd for NonPlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NonPlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.root_color())?;
        if !self.branches().is_empty() {
            f.debug_list().entries(self.branches()).finish()?;
        }
        Ok(())
    }
}

/// Projection of planar trees onto non-planar trees.
pub fn prelie_project(v: &TreeComb) -> LinComb<NonPlanarTree> {
    v.map_monomials(NonPlanarTree::from_planar)
}

/// `s ▶ t`: the sum over all vertices of `t` of `s` attached there; isomorphic
/// results merge with integer coefficients.
pub fn nonplanar_graft(s: &NonPlanarTree, t: &NonPlanarTree) -> LinComb<NonPlanarTree> {
    let mut out = LinComb::zero();
    for r in attach_everywhere(s, t) {
        out.add_term(r, Rational::one());
    }
    out
}

fn attach_everywhere(s: &NonPlanarTree, t: &NonPlanarTree) -> Vec<NonPlanarTree> {
    let mut out = Vec::new();
    let mut at_root = t.branches().to_vec();
    at_root.push(s.clone());
    out.push(NonPlanarTree::new(t.root_color(), at_root));
    for (i, b) in t.branches().iter().enumerate() {
        for r in attach_everywhere(s, b) {
            let mut bs = t.branches().to_vec();
            bs[i] = r;
            out.push(NonPlanarTree::new(t.root_color(), bs));
        }
    }
    out
}

/// `▶` extended bilinearly.
pub fn nonplanar_graft_comb(x: &LinComb<NonPlanarTree>, y: &LinComb<NonPlanarTree>) -> LinComb<NonPlanarTree> {
    let mut out = LinComb::zero();
    for (s, a) in x.iter() {
        for (t, b) in y.iter() {
            out.add_scaled(&nonplanar_graft(s, t), &(a * b));
        }
    }
    out
}

/// All non-planar trees with exactly `k` vertices over `n_colors` colors, sorted.
pub fn enumerate_nonplanar(n_colors: usize, k: usize) -> Vec<NonPlanarTree> {
    let mut by_grade: Vec<Vec<NonPlanarTree>> = vec![Vec::new()];
    for g in 1..=k {
        let lower: Vec<NonPlanarTree> = by_grade[1..g].iter().flatten().cloned().collect();
        let mut layer = Vec::new();
        for c in 0..n_colors {
            for bs in weighted_multisets(&lower, g - 1) {
                layer.push(NonPlanarTree::new(Color(c as u16), bs));
            }
        }
        layer.sort();
        by_grade.push(layer);
    }
    by_grade.pop().unwrap_or_default()
}

/// Multisets of `items` (sorted ascending) with total vertex count `total`.
fn weighted_multisets(items: &[NonPlanarTree], total: usize) -> Vec<Vec<NonPlanarTree>> {
    fn rec(
        items: &[NonPlanarTree],
        hi: usize,
        remaining: usize,
        cur: &mut Vec<NonPlanarTree>,
        out: &mut Vec<Vec<NonPlanarTree>>,
    ) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (0..hi).rev() {
            let g = items[i].vertex_count();
            if g <= remaining {
                cur.push(items[i].clone());
                rec(items, i + 1, remaining - g, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(items, items.len(), total, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dalg::{graft1, triple_bracket_trees};
    use crate::tree::enumerate_trees;

    fn a() -> NonPlanarTree {
        NonPlanarTree::node(Color(0))
    }

    #[test]
    fn rooted_tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|k| enumerate_nonplanar(1, k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
        assert_eq!(enumerate_nonplanar(2, 3).len(), 2 * 2 * 2 + 2 * 3);
    }

    #[test]
    fn branch_order_is_forgotten() {
        let p = PlanarTree::node(Color(0));
        let pp = PlanarTree::from_parts(Color(0), std::slice::from_ref(&p));
        let t1 = PlanarTree::from_parts(Color(0), &[p.clone(), pp.clone()]);
        let t2 = PlanarTree::from_parts(Color(0), &[pp, p]);
        assert_ne!(t1, t2);
        assert_eq!(NonPlanarTree::from_planar(&t1), NonPlanarTree::from_planar(&t2));
    }

    #[test]
    fn graft_onto_cherry_has_multiplicity_two() {
        let edge = NonPlanarTree::new(Color(0), vec![a()]);
        let cherry = NonPlanarTree::new(Color(0), vec![a(), a()]);
        let r = nonplanar_graft(&edge, &cherry);
        let mut coeffs: Vec<i64> = r.iter().map(|(_, c)| c.to_string().parse().unwrap()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![1, 2]);
    }

    #[test]
    fn projection_is_a_homomorphism_and_kills_brackets() {
        let trees: Vec<PlanarTree> = (1..=3).flat_map(|g| enumerate_trees(2, g)).collect();
        for s in &trees {
            for t in &trees {
                let lhs = prelie_project(&graft1(&LinComb::monomial(s.clone()), &LinComb::monomial(t.clone())));
                let rhs = nonplanar_graft(&NonPlanarTree::from_planar(s), &NonPlanarTree::from_planar(t));
                assert_eq!(lhs, rhs);
            }
        }
        for x in &trees[..4] {
            for y in &trees[..4] {
                for z in &trees {
                    assert!(prelie_project(&triple_bracket_trees(x, y, z)).is_zero());
                }
            }
        }
    }
}
