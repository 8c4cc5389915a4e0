//! The projections `π_D`, `π_H` and the LAT normal form `φ = π_H ∘ π_D`.
//!
//! `π_D` removes every symmetric prefix in front of a bracket root by
//! distributing it over the three bracket arguments; the brackets it produces
//! are *formal* (stored as bare bracket shapes, not canonicalized). `π_H` then
//! rewrites every formal bracket into Hall form over the alphabet of
//! color-rooted shapes, giving an element of the span of the basis B.

use super::bbasis::{b_to_tern, tern_to_b};
use super::shape::{Root, Shape};
use super::{DComb, LatEngine};
use crate::hall::Tern;
use crate::lincomb::{multilinear, LinComb};
use crate::rational::Rational;
use crate::tree::TreeComb;

fn for_each_split3(m: usize, mut f: impl FnMut(&[u8])) {
    let mut a = vec![0u8; m];
    loop {
        f(&a);
        let mut pos = 0;
        loop {
            if pos == m {
                return;
            }
            a[pos] += 1;
            if a[pos] < 3 {
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
    }
}

/// Formal brackets `[p, q, r]` of three combinations, without canonicalization.
fn formal_bracket(x: &DComb, y: &DComb, z: &DComb) -> DComb {
    let mut out = LinComb::zero();
    for (p, a) in x.iter() {
        for (q, b) in y.iter() {
            let ab = a * b;
            for (r, c) in z.iter() {
                out.add_term(Shape::bracket(p.clone(), q.clone(), r.clone()), &ab * c);
            }
        }
    }
    out
}

impl LatEngine {
    /// Rewrites an arbitrary shape, read in the D sense (brackets as triple
    /// brackets, prefixes as symmetric grafting), into valid D coordinates.
    pub fn to_d(&self, x: &Shape) -> DComb {
        if x.is_valid() {
            return LinComb::monomial(x.clone());
        }
        let children: Vec<DComb> = x.forest().iter().map(|c| self.to_d(c)).collect();
        let mut out = LinComb::zero();
        match x.root() {
            Root::Color(c) => {
                for (xs, k) in multilinear(&children) {
                    out.add_term(Shape::sym(xs, *c), k);
                }
            }
            Root::Bracket(y, z, t) => {
                let b = self.bracket_d(&self.to_d(y), &self.to_d(z), &self.to_d(t));
                for (xs, k) in multilinear(&children) {
                    for (br, l) in b.iter() {
                        out.add_scaled(&self.graft_sym(&xs, br), &(&k * l));
                    }
                }
            }
        }
        out
    }

    /// [`LatEngine::to_d`] extended linearly.
    pub fn to_d_comb(&self, v: &DComb) -> DComb {
        v.substitute(|x| self.to_d(x))
    }

    /// `π_D` on a valid D shape.
    pub fn pi_d(&self, x: &Shape) -> DComb {
        if x.is_color() {
            return LinComb::monomial(x.clone());
        }
        if let Some(v) = self.pi_d_memo.borrow().get(x) {
            return v.clone();
        }
        let out = match x.root() {
            Root::Color(c) => {
                let children: Vec<DComb> = x.forest().iter().map(|y| self.pi_d(y)).collect();
                let mut out = LinComb::zero();
                for (xs, k) in multilinear(&children) {
                    out.add_term(Shape::sym(xs, *c), k);
                }
                out
            }
            Root::Bracket(y1, y2, y3) => {
                let xs = x.forest();
                if xs.is_empty() {
                    formal_bracket(&self.pi_d(y1), &self.pi_d(y2), &self.pi_d(y3))
                } else {
                    let mut out = LinComb::zero();
                    for_each_split3(xs.len(), |split| {
                        let pick = |k: u8| -> Vec<Shape> {
                            xs.iter().zip(split).filter(|(_, &s)| s == k).map(|(x, _)| x.clone()).collect()
                        };
                        let g1 = self.pi_d_comb(&self.graft_sym(&pick(0), y1));
                        let g2 = self.pi_d_comb(&self.graft_sym(&pick(1), y2));
                        let g3 = self.pi_d_comb(&self.graft_sym(&pick(2), y3));
                        out.add_assign_ref(&formal_bracket(&g1, &g2, &g3));
                    });
                    out
                }
            }
        };
        self.pi_d_memo.borrow_mut().insert(x.clone(), out.clone());
        out
    }

    /// `π_D` extended linearly.
    pub fn pi_d_comb(&self, v: &DComb) -> DComb {
        v.substitute(|x| self.pi_d(x))
    }

    /// `π_H` on a shape in the image of `π_D`.
    ///
    /// # Panics
    ///
    /// Panics if the shape has a nonempty symmetric prefix before a bracket
    /// root (such shapes are outside the image of `π_D`).
    pub fn pi_h(&self, x: &Shape) -> DComb {
        if x.is_color() {
            return LinComb::monomial(x.clone());
        }
        if let Some(v) = self.pi_h_memo.borrow().get(x) {
            return v.clone();
        }
        let out = match x.root() {
            Root::Color(c) => {
                let children: Vec<DComb> = x.forest().iter().map(|y| self.pi_h(y)).collect();
                let mut out = LinComb::zero();
                for (xs, k) in multilinear(&children) {
                    out.add_term(Shape::sym(xs, *c), k);
                }
                out
            }
            Root::Bracket(y1, y2, y3) => {
                assert!(x.forest().is_empty(), "π_H applied outside the image of π_D: {x:?}");
                let t = |v: DComb| -> LinComb<Tern<Shape>> { v.map_monomials(b_to_tern) };
                let h = self.hall.bracket(&t(self.pi_h(y1)), &t(self.pi_h(y2)), &t(self.pi_h(y3)));
                h.map_monomials(tern_to_b)
            }
        };
        self.pi_h_memo.borrow_mut().insert(x.clone(), out.clone());
        out
    }

    /// `π_H` extended linearly.
    pub fn pi_h_comb(&self, v: &DComb) -> DComb {
        v.substitute(|x| self.pi_h(x))
    }

    /// The LAT normal form of an element given by shapes (read in the D sense,
    /// canonical or not); the result is a combination of B elements.
    pub fn phi(&self, v: &DComb) -> DComb {
        self.pi_h_comb(&self.pi_d_comb(&self.to_d_comb(v)))
    }

    /// The LAT normal form of a combination of planar trees.
    pub fn phi_trees(&self, v: &TreeComb) -> DComb {
        self.pi_h_comb(&self.pi_d_comb(&self.trees_to_d(v)))
    }

    /// `(x₁⋯x_n) ⊳ t` for a plain (non-symmetrized) word, in D coordinates.
    ///
    /// Uses `(x·w) ⊳ t = x ⊳ (w ⊳ t) − (x ⊳ w) ⊳ t`, where `x ⊳ w` acts on
    /// each letter of `w`.
    pub fn word_graft(&self, word: &[Shape], t: &DComb) -> DComb {
        match word.len() {
            0 => t.clone(),
            1 => self.product(&LinComb::monomial(word[0].clone()), t),
            _ => {
                let x = LinComb::monomial(word[0].clone());
                let rest = &word[1..];
                let mut out = self.product(&x, &self.word_graft(rest, t));
                for i in 0..rest.len() {
                    let acted = self.product(&x, &LinComb::monomial(rest[i].clone()));
                    for (a, c) in acted.iter() {
                        let mut w = rest.to_vec();
                        w[i] = a.clone();
                        out.add_scaled(&self.word_graft(&w, t), &-c.clone());
                    }
                }
                out
            }
        }
    }

    /// `Σ_{I ⊔ J ⊔ K} [x_I ⊳ r₁, x_J ⊳ r₂, x_K ⊳ r₃]` over ordered set
    /// partitions, with index order preserved inside each block; the brackets
    /// are returned as formal bracket shapes.
    pub fn derivation_expand(&self, xs: &[Shape], r1: &Shape, r2: &Shape, r3: &Shape) -> DComb {
        let mut out = LinComb::zero();
        for_each_split3(xs.len(), |split| {
            let pick = |k: u8| -> Vec<Shape> {
                xs.iter().zip(split).filter(|(_, &s)| s == k).map(|(x, _)| x.clone()).collect()
            };
            let g = |k: u8, r: &Shape| self.word_graft(&pick(k), &LinComb::monomial(r.clone()));
            out.add_assign_ref(&formal_bracket(&g(0, r1), &g(1, r2), &g(2, r3)));
        });
        out
    }

    /// `[x, y, z] + [y, z, x] + [z, x, y]` in D coordinates.
    pub fn lat1_relation(&self, x: &DComb, y: &DComb, z: &DComb) -> DComb {
        self.bracket_d(x, y, z) + self.bracket_d(y, z, x) + self.bracket_d(z, x, y)
    }

    /// `w ⊳ [x, y, z] − [w ⊳ x, y, z] − [x, w ⊳ y, z] − [x, y, w ⊳ z]` in D coordinates.
    pub fn lat2_relation(&self, w: &DComb, x: &DComb, y: &DComb, z: &DComb) -> DComb {
        let mut v = self.product(w, &self.bracket_d(x, y, z));
        v = v - self.bracket_d(&self.product(w, x), y, z);
        v = v - self.bracket_d(x, &self.product(w, y), z);
        v - self.bracket_d(x, y, &self.product(w, z))
    }

    /// Expands a combination of formal or canonical shapes (D reading) into planar trees.
    pub fn expand_d_comb(&self, v: &DComb) -> TreeComb {
        let mut out = LinComb::zero();
        for (x, c) in self.to_d_comb(v).iter() {
            out.add_scaled(&self.expand_d(x), c);
        }
        out
    }

    /// `φ` applied to the identity `(x₁⋯x_n) ⊳ [r₁, r₂, r₃] − derivation_expand(…)`.
    pub fn derivation_defect(&self, xs: &[Shape], r1: &Shape, r2: &Shape, r3: &Shape) -> DComb {
        let br = self.bracket_d(
            &LinComb::monomial(r1.clone()),
            &LinComb::monomial(r2.clone()),
            &LinComb::monomial(r3.clone()),
        );
        let mut v = self.word_graft(xs, &br);
        v.add_scaled(&self.derivation_expand(xs, r1, r2, r3), &Rational::from_int(-1));
        self.phi(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Color;
    use crate::dalg::{graft1, triple_bracket_trees};
    use crate::tree::{enumerate_trees, PlanarTree};

    fn a() -> PlanarTree {
        PlanarTree::node(Color(0))
    }

    #[test]
    fn phi_of_color_and_small_trees() {
        let e = LatEngine::new(1);
        let c = Shape::color(Color(0));
        assert_eq!(e.phi(&LinComb::monomial(c.clone())), LinComb::monomial(c));
        for g in 1..=3 {
            for t in enumerate_trees(1, g) {
                // no brackets below grade 4 over one color: φ is the D coordinate map
                assert_eq!(e.phi_trees(&LinComb::monomial(t.clone())), e.tree_to_d(&t));
            }
        }
    }

    #[test]
    fn phi_kills_lat1() {
        let e = LatEngine::new(2);
        let trees: Vec<PlanarTree> = (1..=2).flat_map(|g| enumerate_trees(2, g)).collect();
        for x in &trees {
            for y in &trees {
                for z in &trees {
                    let v = triple_bracket_trees(x, y, z) + triple_bracket_trees(y, z, x) + triple_bracket_trees(z, x, y);
                    assert!(e.phi_trees(&v).is_zero());
                }
            }
        }
    }

    #[test]
    fn phi_kills_lat2() {
        let e = LatEngine::new(1);
        let trees: Vec<PlanarTree> = (1..=2).flat_map(|g| enumerate_trees(1, g)).collect();
        for w in &trees {
            for x in &trees {
                for y in &trees {
                    for z in &trees {
                        let one = |t: &PlanarTree| LinComb::monomial(t.clone());
                        let mut v = graft1(&one(w), &triple_bracket_trees(x, y, z));
                        for (i, arg) in [x, y, z].iter().enumerate() {
                            let wx = graft1(&one(w), &one(arg));
                            let mut args = [one(x), one(y), one(z)];
                            args[i] = wx;
                            v = v - crate::dalg::triple_bracket(&args[0], &args[1], &args[2]);
                        }
                        assert!(e.phi_trees(&v).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn phi_is_idempotent_on_b() {
        let e = LatEngine::new(1);
        let t = PlanarTree::from_parts(Color(0), &[a(), PlanarTree::from_parts(Color(0), &[a(), a()]), a()]);
        let v = e.phi_trees(&LinComb::monomial(t));
        assert_eq!(e.phi(&v), v);
    }

    #[test]
    fn derivation_expand_term_counts() {
        let e = LatEngine::new(2);
        let a = Shape::color(Color(0));
        let b = Shape::color(Color(1));
        assert_eq!(e.derivation_expand(&[], &a, &b, &a), LinComb::monomial(Shape::bracket(a.clone(), b.clone(), a.clone())));
        assert_eq!(e.derivation_expand(std::slice::from_ref(&b), &a, &b, &a).len(), 3);
    }

    #[test]
    fn derivation_identity_holds_modulo_the_ideal() {
        let e = LatEngine::new(2);
        let small: Vec<Shape> = (1..=2).flat_map(|g| e.shapes_of_grade(g)).collect();
        let a = Shape::color(Color(0));
        let b = Shape::color(Color(1));
        for x in &small {
            assert!(e.derivation_defect(std::slice::from_ref(x), &a, &b, &a).is_zero());
            for y in &small {
                assert!(e.derivation_defect(&[x.clone(), y.clone()], &b, &a, &a).is_zero());
            }
        }
    }
}
