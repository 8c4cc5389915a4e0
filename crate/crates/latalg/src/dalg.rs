//! The grafting D-algebra: tensor words of trees acting on trees.
//!
//! This module collects the word-level operations (concatenation commutator,
//! symmetrization, Leibniz action), the triple bracket, and the two mutually
//! inverse changes of basis between binary magma monomials and planar trees.

use std::fmt;
use std::sync::Arc;

use crate::color::Color;
use crate::lincomb::{LinComb, Monomial};
use crate::rational::{factorial, Rational};
use crate::tree::{graft_tree, graft_word, leibniz_tree_on_word, PlanarTree, TreeComb};

/// A tensor word over an atom type; the empty word is the unit.
pub type Word<A> = Vec<A>;

/// A bracketed expression in the generators: a color, or `left ⊳ right`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MagmaMonomial {
    /// A generator.
    Leaf(Color),
    /// `left ⊳ right`.
    Graft(Arc<MagmaMonomial>, Arc<MagmaMonomial>),
}

impl MagmaMonomial {
    /// `l ⊳ r`.
    pub fn graft(l: MagmaMonomial, r: MagmaMonomial) -> Self {
        MagmaMonomial::Graft(Arc::new(l), Arc::new(r))
    }

    /// Number of color leaves.
    pub fn vertex_count(&self) -> usize {
        match self {
            MagmaMonomial::Leaf(_) => 1,
            MagmaMonomial::Graft(l, r) => l.vertex_count() + r.vertex_count(),
        }
    }
}

impl fmt::Debug for MagmaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaMonomial::Leaf(c) => write!(f, "{c:?}"),
            MagmaMonomial::Graft(l, r) => write!(f, "(> {l:?} {r:?})"),
        }
    }
}

/// All magma monomials with `k` leaves over `n_colors` colors.
pub fn enumerate_magma(n_colors: usize, k: usize) -> Vec<MagmaMonomial> {
    if k == 1 {
        return (0..n_colors).map(|c| MagmaMonomial::Leaf(Color(c as u16))).collect();
    }
    let mut out = Vec::new();
    for left in 1..k {
        let ls = enumerate_magma(n_colors, left);
        let rs = enumerate_magma(n_colors, k - left);
        for l in &ls {
            for r in &rs {
                out.push(MagmaMonomial::graft(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Evaluates a magma monomial in the tree basis by repeated single grafting.
pub fn magma_to_tree(m: &MagmaMonomial) -> TreeComb {
    match m {
        MagmaMonomial::Leaf(c) => LinComb::monomial(PlanarTree::node(*c)),
        MagmaMonomial::Graft(l, r) => {
            let lt = magma_to_tree(l);
            let rt = magma_to_tree(r);
            let mut out = LinComb::zero();
            for (x, a) in lt.iter() {
                for (y, b) in rt.iter() {
                    out.add_scaled(&graft_tree(x, y), &(a * b));
                }
            }
            out
        }
    }
}

/// Expresses a planar tree in the magma basis.
///
/// Peels off the first root branch: `(t₁·u) ⊳ c = t₁ ⊳ (u ⊳ c) − (t₁ ⊳ u) ⊳ c`,
/// where the second term has one root branch fewer.
pub fn tree_to_magma(t: &PlanarTree) -> LinComb<MagmaMonomial> {
    let c = t.root_color();
    let bs = t.branches();
    if bs.is_empty() {
        return LinComb::monomial(MagmaMonomial::Leaf(c));
    }
    let first = &bs[0];
    let rest = PlanarTree::from_parts(c, &bs[1..]);
    let mut out = LinComb::zero();
    for (l, a) in tree_to_magma(first).iter() {
        for (r, b) in tree_to_magma(&rest).iter() {
            out.add_term(MagmaMonomial::graft(l.clone(), r.clone()), a * b);
        }
    }
    for (w, k) in leibniz_tree_on_word(first, &bs[1..]).iter() {
        let shorter = PlanarTree::from_parts(c, w);
        out.add_scaled(&tree_to_magma(&shorter), &-k.clone());
    }
    out
}

/// `𝔰(x₁⋯x_k)`: the average over all orderings, with repeated orderings merged.
pub fn symmetrize<A: Monomial + Ord>(word: &[A]) -> LinComb<Word<A>> {
    let mut sorted = word.to_vec();
    sorted.sort();
    let weight = factorial(word.len()).recip();
    let mut out = LinComb::zero();
    // each distinct arrangement occurs (Π multiplicity!) times among the k! orderings
    let mut mult = Rational::one();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        mult = &mult * &factorial(j - i);
        i = j;
    }
    let c = &mult * &weight;
    for p in distinct_permutations(&sorted) {
        out.add_term(p, c.clone());
    }
    out
}

/// All distinct rearrangements of a sorted slice, in lexicographic order.
pub fn distinct_permutations<A: Clone + Ord>(sorted: &[A]) -> Vec<Vec<A>> {
    let mut cur = sorted.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    // next_permutation loop
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Concatenation product of linear combinations of words.
pub fn concat<A: Monomial>(u: &LinComb<Word<A>>, v: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    let mut out = LinComb::zero();
    for (x, a) in u.iter() {
        for (y, b) in v.iter() {
            let mut w = x.clone();
            w.extend(y.iter().cloned());
            out.add_term(w, a * b);
        }
    }
    out
}

/// `[u, v] = u·v − v·u`.
pub fn lie_bracket<A: Monomial>(u: &LinComb<Word<A>>, v: &LinComb<Word<A>>) -> LinComb<Word<A>> {
    concat(u, v) - concat(v, u)
}

/// The word consisting of one atom.
pub fn letter<A: Monomial>(a: A) -> LinComb<Word<A>> {
    LinComb::monomial(vec![a])
}

/// `x ⊳ ω` for a tree combination `x`: the derivation extended over words.
pub fn leibniz_act(x: &TreeComb, w: &LinComb<Word<PlanarTree>>) -> LinComb<Word<PlanarTree>> {
    let mut out = LinComb::zero();
    for (t, a) in x.iter() {
        for (word, b) in w.iter() {
            out.add_scaled(&leibniz_tree_on_word(t, word), &(a * b));
        }
    }
    out
}

/// `ω ⊳ t` for combinations of words and trees.
pub fn graft(w: &LinComb<Word<PlanarTree>>, t: &TreeComb) -> TreeComb {
    crate::tree::graft_comb(w, t)
}

/// `x ⊳ y` for tree combinations.
pub fn graft1(x: &TreeComb, y: &TreeComb) -> TreeComb {
    graft(&x.map_monomials(|t| vec![t.clone()]), y)
}

/// `[x, y, z] = (x·y − y·x) ⊳ z`.
pub fn triple_bracket(x: &TreeComb, y: &TreeComb, z: &TreeComb) -> TreeComb {
    let xw = x.map_monomials(|t| vec![t.clone()]);
    let yw = y.map_monomials(|t| vec![t.clone()]);
    graft(&lie_bracket(&xw, &yw), z)
}

/// Triple bracket of single trees.
pub fn triple_bracket_trees(x: &PlanarTree, y: &PlanarTree, z: &PlanarTree) -> TreeComb {
    let mut out = graft_word(&[x.clone(), y.clone()], z);
    out.add_scaled(&graft_word(&[y.clone(), x.clone()], z), &Rational::from_int(-1));
    out
}

/// `ω ⊳ r − ρ(ω) ⊳ r` where `ρ` is given as a permutation of positions.
///
/// Returns `None` when `perm` is not a permutation of `0..ω.len()`.
pub fn prelie_ideal_witness(word: &[PlanarTree], perm: &[usize], r: &PlanarTree) -> Option<TreeComb> {
    if perm.len() != word.len() {
        return None;
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return None;
        }
        seen[p] = true;
    }
    let permuted: Vec<PlanarTree> = perm.iter().map(|&p| word[p].clone()).collect();
    let mut out = graft_word(word, r);
    out.add_scaled(&graft_word(&permuted, r), &Rational::from_int(-1));
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    fn a() -> PlanarTree {
        PlanarTree::node(Color(0))
    }

    #[test]
    fn symmetrize_merges_duplicates() {
        let s = symmetrize(&['a', 'a', 'b']);
        assert_eq!(s.len(), 3);
        for (_, c) in s.iter() {
            assert_eq!(*c, Rational::new(1, 3));
        }
        let s2 = symmetrize(&['a', 'b']);
        assert_eq!(s2.coeff(&vec!['b', 'a']), Rational::new(1, 2));
        assert_eq!(symmetrize::<char>(&[]), LinComb::monomial(vec![]));
    }

    #[test]
    fn lie_bracket_examples() {
        let u = letter('a');
        assert!(lie_bracket(&u, &u).is_zero());
        let ab = LinComb::monomial(vec!['a', 'b']);
        let c = letter('c');
        let br = lie_bracket(&ab, &c);
        assert_eq!(br.coeff(&vec!['a', 'b', 'c']), Rational::one());
        assert_eq!(br.coeff(&vec!['c', 'a', 'b']), Rational::from_int(-1));
    }

    #[test]
    fn magma_round_trip() {
        for k in 1..=6 {
            let trees = enumerate_trees(1, k);
            let mags = enumerate_magma(1, k);
            assert_eq!(trees.len(), mags.len());
            for t in &trees {
                let back = tree_to_magma(t).substitute(magma_to_tree);
                assert_eq!(back, LinComb::monomial(t.clone()));
            }
            for m in &mags {
                let back = magma_to_tree(m).substitute(tree_to_magma);
                assert_eq!(back, LinComb::monomial(m.clone()));
            }
        }
    }

    #[test]
    fn magma_example_from_tree_rewrite() {
        // (a⊳a)·(a⊳a) onto a, written in the magma basis
        let aa = PlanarTree::from_parts(Color(0), &[a()]);
        let t = PlanarTree::from_parts(Color(0), &[aa.clone(), aa]);
        let l = MagmaMonomial::Leaf(Color(0));
        let laa = MagmaMonomial::graft(l.clone(), l.clone());
        let first = MagmaMonomial::graft(laa.clone(), MagmaMonomial::graft(laa.clone(), l.clone()));
        let second = MagmaMonomial::graft(MagmaMonomial::graft(laa.clone(), laa), l);
        let expect = LinComb::monomial(first) - LinComb::monomial(second);
        assert_eq!(tree_to_magma(&t), expect);
    }

    #[test]
    fn triple_bracket_skew_and_witness() {
        let ts = enumerate_trees(2, 2);
        let (x, y, z) = (&ts[0], &ts[1], &ts[2]);
        let l = triple_bracket_trees(x, y, z);
        let r = triple_bracket_trees(y, x, z);
        assert!((l.clone() + r).is_zero());
        let w = prelie_ideal_witness(&[x.clone(), y.clone()], &[1, 0], z).unwrap();
        assert_eq!(w, l);
        assert!(prelie_ideal_witness(std::slice::from_ref(x), &[0], z).unwrap().is_zero());
        assert!(prelie_ideal_witness(std::slice::from_ref(x), &[1], z).is_none());
    }

    #[test]
    fn leibniz_on_empty_word_is_zero() {
        let x = LinComb::monomial(a());
        let e: LinComb<Word<PlanarTree>> = LinComb::monomial(vec![]);
        assert!(leibniz_act(&x, &e).is_zero());
    }
}
