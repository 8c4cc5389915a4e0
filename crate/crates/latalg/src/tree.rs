//! Planar rooted trees with colored nodes and left grafting.
//!
//! A [`PlanarTree`] is stored as its preorder code: one `u32` per node holding
//! `color << 16 | arity`. The code is shared behind an `Arc`, so cloning and
//! hashing are cheap, and structural equality is slice equality.
//!
//! Grafting a word of trees onto a tree follows the closed form of the
//! Leibniz/associator recursion: sum over all assignments of the word's trees
//! to nodes of the target; trees assigned to the same node become its leftmost
//! branches, in word order. [`graft_word_recursive`] implements the recursion
//! literally and serves as an independent cross-check.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::color::{Alphabet, Color};
use crate::lincomb::LinComb;
use crate::rational::Rational;

const ARITY_MASK: u32 = 0xFFFF;

fn entry(color: Color, arity: usize) -> u32 {
    debug_assert!(arity <= ARITY_MASK as usize);
    ((color.0 as u32) << 16) | arity as u32
}

fn entry_color(e: u32) -> Color {
    Color((e >> 16) as u16)
}

fn entry_arity(e: u32) -> usize {
    (e & ARITY_MASK) as usize
}

/// Length of the subtree whose root sits at `start` in a preorder code.
fn subtree_len(code: &[u32], start: usize) -> usize {
    let mut need = 1usize;
    let mut i = start;
    while need > 0 {
        need += entry_arity(code[i]);
        need -= 1;
        i += 1;
    }
    i - start
}

/// A planar rooted tree with every node colored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanarTree {
    code: Arc<[u32]>,
}

impl PlanarTree {
    /// The single-node tree `c`.
    pub fn node(c: Color) -> Self {
        PlanarTree { code: Arc::from(vec![entry(c, 0)]) }
    }

    /// The tree `(b₁⋯b_k) ⊳ c` with the given ordered branches.
    pub fn from_parts(c: Color, branches: &[PlanarTree]) -> Self {
        let mut code = Vec::with_capacity(1 + branches.iter().map(|b| b.code.len()).sum::<usize>());
        code.push(entry(c, branches.len()));
        for b in branches {
            code.extend_from_slice(&b.code);
        }
        PlanarTree { code: Arc::from(code) }
    }

    /// Rebuilds a tree from a raw preorder code, validating its shape.
    pub fn from_code(code: Vec<u32>) -> Option<Self> {
        if code.is_empty() || subtree_len_checked(&code, 0)? != code.len() {
            return None;
        }
        Some(PlanarTree { code: Arc::from(code) })
    }

    /// The raw preorder code.
    pub fn code(&self) -> &[u32] {
        &self.code
    }

    /// Color of the root.
    pub fn root_color(&self) -> Color {
        entry_color(self.code[0])
    }

    /// Number of branches at the root.
    pub fn root_arity(&self) -> usize {
        entry_arity(self.code[0])
    }

    /// Number of vertices `|t|_V`.
    pub fn vertex_count(&self) -> usize {
        self.code.len()
    }

    /// The ordered branches of the root.
    pub fn branches(&self) -> Vec<PlanarTree> {
        let mut out = Vec::with_capacity(self.root_arity());
        let mut i = 1;
        while i < self.code.len() {
            let l = subtree_len(&self.code, i);
            out.push(PlanarTree { code: Arc::from(&self.code[i..i + l]) });
            i += l;
        }
        out
    }

    /// Colors of all nodes in preorder.
    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.code.iter().map(|&e| entry_color(e))
    }

    /// Renders as `c` or `c(b₁, …, b_k)` using the given alphabet names.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.render_into(alphabet, &mut s);
        s
    }

    fn render_into(&self, alphabet: &Alphabet, out: &mut String) {
        out.push_str(alphabet.name(self.root_color()));
        let bs = self.branches();
        if !bs.is_empty() {
            out.push('(');
            for (i, b) in bs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                b.render_into(alphabet, out);
            }
            out.push(')');
        }
    }
}

fn subtree_len_checked(code: &[u32], start: usize) -> Option<usize> {
    let mut need = 1usize;
    let mut i = start;
    while need > 0 {
        let e = *code.get(i)?;
        need += entry_arity(e);
        need -= 1;
        i += 1;
    }
    Some(i - start)
}

impl Ord for PlanarTree {
    /// Vertex count first, then lexicographic on the preorder code.
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.len().cmp(&other.code.len()).then_with(|| self.code.cmp(&other.code))
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Alphabet::standard(
            self.colors().map(|c| c.index() + 1).max().unwrap_or(1),
        );
        write!(f, "{}", self.render(&names))
    }
}

/// A linear combination of planar trees.
pub type TreeComb = LinComb<PlanarTree>;

/// `s ⊳ t` for single trees: `s` becomes the new first branch of each node.
pub fn graft_tree(s: &PlanarTree, t: &PlanarTree) -> TreeComb {
    graft_word(std::slice::from_ref(s), t)
}

/// `(s₁⋯s_m) ⊳ t` by the closed-form assignment sum.
pub fn graft_word(word: &[PlanarTree], t: &PlanarTree) -> TreeComb {
    let mut out = LinComb::zero();
    if word.is_empty() {
        out.add_term(t.clone(), Rational::one());
        return out;
    }
    let n = t.code.len();
    let m = word.len();
    let extra: usize = word.iter().map(|s| s.code.len()).sum();
    let mut assign = vec![0usize; m];
    let mut counts = vec![0usize; n];
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        for &a in &assign {
            counts[a] += 1;
        }
        let mut code = Vec::with_capacity(n + extra);
        for (i, &e) in t.code.iter().enumerate() {
            code.push(entry(entry_color(e), entry_arity(e) + counts[i]));
            if counts[i] > 0 {
                for (k, &a) in assign.iter().enumerate() {
                    if a == i {
                        code.extend_from_slice(&word[k].code);
                    }
                }
            }
        }
        out.add_term(PlanarTree { code: Arc::from(code) }, Rational::one());
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == m {
                return out;
            }
            assign[pos] += 1;
            if assign[pos] < n {
                break;
            }
            assign[pos] = 0;
            pos += 1;
        }
    }
}

/// Grafting of a linear combination of words onto a linear combination of trees.
pub fn graft_comb(words: &LinComb<Vec<PlanarTree>>, t: &TreeComb) -> TreeComb {
    let mut out = LinComb::zero();
    for (w, c) in words.iter() {
        for (tt, d) in t.iter() {
            out.add_scaled(&graft_word(w, tt), &(c * d));
        }
    }
    out
}

/// `x ⊳ (u₁⋯u_k)`: the Leibniz action of a tree on a word of trees.
pub fn leibniz_tree_on_word(x: &PlanarTree, word: &[PlanarTree]) -> LinComb<Vec<PlanarTree>> {
    let mut out = LinComb::zero();
    for i in 0..word.len() {
        for (g, c) in graft_tree(x, &word[i]).iter() {
            let mut w = word.to_vec();
            w[i] = g.clone();
            out.add_term(w, c.clone());
        }
    }
    out
}

/// `(s₁⋯s_m) ⊳ t` computed literally from the associator rule
/// `(x·u) ⊳ v = x ⊳ (u ⊳ v) − (x ⊳ u) ⊳ v` with the Leibniz rule for `x ⊳ u`.
pub fn graft_word_recursive(word: &[PlanarTree], t: &PlanarTree) -> TreeComb {
    if word.is_empty() {
        return LinComb::monomial(t.clone());
    }
    if word.len() == 1 {
        return graft_single_by_branches(&word[0], t);
    }
    let x = &word[0];
    let u = &word[1..];
    let mut out = LinComb::zero();
    for (v, c) in graft_word_recursive(u, t).iter() {
        out.add_scaled(&graft_single_by_branches(x, v), c);
    }
    for (xu, c) in leibniz_tree_on_word(x, u).iter() {
        out.add_scaled(&graft_word_recursive(xu, t), &-c.clone());
    }
    out
}

/// Single grafting defined structurally: `s ⊳ ((t₁⋯t_k)⊳c)` is `s` prepended as
/// a branch plus `s` grafted into each branch in turn.
fn graft_single_by_branches(s: &PlanarTree, t: &PlanarTree) -> TreeComb {
    let c = t.root_color();
    let bs = t.branches();
    let mut out = LinComb::zero();
    let mut first = Vec::with_capacity(bs.len() + 1);
    first.push(s.clone());
    first.extend(bs.iter().cloned());
    out.add_term(PlanarTree::from_parts(c, &first), Rational::one());
    for i in 0..bs.len() {
        for (g, k) in graft_single_by_branches(s, &bs[i]).iter() {
            let mut nb = bs.clone();
            nb[i] = g.clone();
            out.add_term(PlanarTree::from_parts(c, &nb), k.clone());
        }
    }
    out
}

/// All planar trees with exactly `k` vertices over `n_colors` colors, sorted.
pub fn enumerate_trees(n_colors: usize, k: usize) -> Vec<PlanarTree> {
    let mut forests: FxHashMap<usize, Vec<Vec<PlanarTree>>> = FxHashMap::default();
    let mut out = trees_of_size(n_colors, k, &mut forests);
    out.sort();
    out
}

fn trees_of_size(
    n_colors: usize,
    k: usize,
    forests: &mut FxHashMap<usize, Vec<Vec<PlanarTree>>>,
) -> Vec<PlanarTree> {
    if k == 0 {
        return Vec::new();
    }
    let fs = forests_of_size(n_colors, k - 1, forests);
    let mut out = Vec::with_capacity(fs.len() * n_colors);
    for c in 0..n_colors {
        for f in &fs {
            out.push(PlanarTree::from_parts(Color(c as u16), f));
        }
    }
    out
}

fn forests_of_size(
    n_colors: usize,
    k: usize,
    memo: &mut FxHashMap<usize, Vec<Vec<PlanarTree>>>,
) -> Vec<Vec<PlanarTree>> {
    if let Some(v) = memo.get(&k) {
        return v.clone();
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
    } else {
        for first in 1..=k {
            let heads = trees_of_size(n_colors, first, memo);
            let tails = forests_of_size(n_colors, k - first, memo);
            for h in &heads {
                for t in &tails {
                    let mut f = Vec::with_capacity(t.len() + 1);
                    f.push(h.clone());
                    f.extend(t.iter().cloned());
                    out.push(f);
                }
            }
        }
    }
    memo.insert(k, out.clone());
    out
}

/// All planar trees with at most `max_k` vertices, sorted.
pub fn enumerate_trees_upto(n_colors: usize, max_k: usize) -> Vec<PlanarTree> {
    (1..=max_k).flat_map(|k| enumerate_trees(n_colors, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> PlanarTree {
        PlanarTree::node(Color(0))
    }

    #[test]
    fn vertex_counts_and_branches() {
        let t = PlanarTree::from_parts(Color(0), &[a(), PlanarTree::from_parts(Color(1), &[a()])]);
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.branches().len(), 2);
        assert_eq!(t.branches()[1].vertex_count(), 2);
        assert_eq!(PlanarTree::from_code(t.code().to_vec()), Some(t));
        assert_eq!(PlanarTree::from_code(vec![entry(Color(0), 2)]), None);
    }

    #[test]
    fn graft_onto_two_branch_tree_has_three_terms() {
        let s = PlanarTree::node(Color(1));
        let t = PlanarTree::from_parts(Color(0), &[a(), a()]);
        let g = graft_tree(&s, &t);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn empty_word_is_unit() {
        let t = PlanarTree::from_parts(Color(0), &[a()]);
        assert_eq!(graft_word(&[], &t), LinComb::monomial(t));
    }

    #[test]
    fn closed_form_matches_recursion() {
        let trees = enumerate_trees_upto(2, 3);
        for s1 in &trees {
            for s2 in &trees {
                for t in trees.iter().take(6) {
                    let w = vec![s1.clone(), s2.clone()];
                    assert_eq!(graft_word(&w, t), graft_word_recursive(&w, t));
                }
            }
        }
        let w = vec![a(), a(), a()];
        let t = PlanarTree::from_parts(Color(0), &[a()]);
        assert_eq!(graft_word(&w, &t), graft_word_recursive(&w, &t));
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=7).map(|k| enumerate_trees(1, k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(enumerate_trees(2, 3).len(), 2 * 2 * 2 * 2);
    }
}
