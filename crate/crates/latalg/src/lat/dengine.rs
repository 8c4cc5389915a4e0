//! Products computed directly in D coordinates.
//!
//! The D basis consists of `𝔰(X) ⊳ c` and `𝔰(X) ⊳ [y₁, y₂, y₃]` with
//! `y₁ > y₂ ≤ X`. Grafting in these coordinates rests on three identities of
//! the D-algebra (letters are primitive for the deshuffle coproduct):
//!
//! * `U ⊳ (V ⊳ w) = Σ (U₍₁₎ · (U₍₂₎ ⊳ V)) ⊳ w`;
//! * `𝔰(Y) ⊳ 𝔰(x₁⋯x_n) = Σ_g 𝔰(z₁⋯z_n)` with `zᵢ = 𝔰(Y_{g⁻¹(i)}) ⊳ xᵢ`, summed
//!   over all maps `g` from `Y` to positions;
//! * `[y, z] ⊳ v = [y, z, v]` (the triple bracket).
//!
//! An OSBB word over D elements acting on a root (a color or a canonical
//! bracket) is resolved by [`LatEngine::word_onto`]; a leading ordered block
//! `𝔰(X)·[y,z]` contributes the D element `𝔰(X) ⊳ [y, z, ω′ ⊳ r]` plus
//! strictly shorter correction words.

use super::shape::{Root, Shape};
use super::{DComb, LatEngine};
use crate::lincomb::LinComb;
use crate::osbb::OsbbWord;
use crate::rational::Rational;
use crate::tree::PlanarTree;

/// A factor of a block product: a symmetric group of atoms or a bracket pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Factor {
    Sym(Vec<Shape>),
    Pair(Shape, Shape),
}

fn sorted_desc(mut v: Vec<Shape>) -> Vec<Shape> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Iterates over all maps `0..m → 0..k` as vectors (mixed radix), calling `f` on each.
fn for_each_assignment(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        if m == 0 {
            f(&[]);
        }
        return;
    }
    let mut a = vec![0usize; m];
    loop {
        f(&a);
        let mut pos = 0;
        loop {
            if pos == m {
                return;
            }
            a[pos] += 1;
            if a[pos] < k {
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
    }
}

/// Multilinear expansion of a list of combinations into lists of monomials.
fn expand_lists(parts: &[DComb]) -> Vec<(Vec<Shape>, Rational)> {
    crate::lincomb::multilinear(parts)
}

impl LatEngine {
    /// The canonical D form of the triple bracket `[y, z, t]`: `None` if `y = z`,
    /// otherwise a sign and the bare bracket shape with first entry larger.
    pub fn canonical_bracket(y: &Shape, z: &Shape, t: &Shape) -> Option<(Rational, Shape)> {
        match y.cmp(z) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some((Rational::one(), Shape::bracket(y.clone(), z.clone(), t.clone()))),
            std::cmp::Ordering::Less => Some((Rational::from_int(-1), Shape::bracket(z.clone(), y.clone(), t.clone()))),
        }
    }

    /// `[x, y, z]` for D combinations, in D coordinates.
    pub fn bracket_d(&self, x: &DComb, y: &DComb, z: &DComb) -> DComb {
        let mut out = LinComb::zero();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                let ab = a * b;
                for (r, c) in z.iter() {
                    if let Some((s, m)) = Self::canonical_bracket(p, q, r) {
                        out.add_term(m, &(&ab * c) * &s);
                    }
                }
            }
        }
        out
    }

    /// `x ⊳ y` for D combinations, in D coordinates.
    pub fn product(&self, x: &DComb, y: &DComb) -> DComb {
        let mut out = LinComb::zero();
        for (p, a) in x.iter() {
            for (q, b) in y.iter() {
                out.add_scaled(&self.graft_sym(std::slice::from_ref(p), q), &(a * b));
            }
        }
        out
    }

    /// `𝔰(X) ⊳ t` in D coordinates for D elements `X` and a valid D element `t`.
    pub fn graft_sym(&self, xs: &[Shape], t: &Shape) -> DComb {
        if xs.is_empty() {
            return LinComb::monomial(t.clone());
        }
        let xs = sorted_desc(xs.to_vec());
        let key = (xs.clone(), t.clone());
        if let Some(v) = self.graft_sym_memo.borrow().get(&key) {
            return v.clone();
        }
        let target = t.forest();
        let root = t.root().clone();
        let n = target.len();
        // (kept multiset, new symmetric part) → coefficient
        let mut pending: LinComb<(Vec<Shape>, Vec<Shape>)> = LinComb::zero();
        for_each_assignment(xs.len(), n + 1, |assign| {
            let mut kept = Vec::new();
            let mut groups: Vec<Vec<Shape>> = vec![Vec::new(); n];
            for (i, &a) in assign.iter().enumerate() {
                if a == 0 {
                    kept.push(xs[i].clone());
                } else {
                    groups[a - 1].push(xs[i].clone());
                }
            }
            let parts: Vec<DComb> = groups
                .iter()
                .zip(target.iter())
                .map(|(g, x)| if g.is_empty() { LinComb::monomial(x.clone()) } else { self.graft_sym(g, x) })
                .collect();
            let kept = sorted_desc(kept);
            for (zs, c) in expand_lists(&parts) {
                pending.add_term((kept.clone(), sorted_desc(zs)), c);
            }
        });
        let mut words: LinComb<OsbbWord<Shape>> = LinComb::zero();
        for ((kept, zs), c) in pending.iter() {
            let w = self.osbb.prepend_sym(kept, &LinComb::monomial(OsbbWord::symmetric(zs.clone())));
            words.add_scaled(&w, c);
        }
        let out = self.onto_root_comb(&words, &root);
        self.graft_sym_memo.borrow_mut().insert(key, out.clone());
        out
    }

    /// `(𝔰(X)·[p, q]) ⊳ t` in D coordinates.
    pub fn graft_sym_pair(&self, xs: &[Shape], p: &Shape, q: &Shape, t: &Shape) -> DComb {
        match p.cmp(q) {
            std::cmp::Ordering::Equal => return LinComb::zero(),
            std::cmp::Ordering::Less => return -self.graft_sym_pair(xs, q, p, t),
            std::cmp::Ordering::Greater => {}
        }
        let xs = sorted_desc(xs.to_vec());
        let key = (xs.clone(), p.clone(), q.clone(), t.clone());
        if let Some(v) = self.graft_pair_memo.borrow().get(&key) {
            return v.clone();
        }
        let target = t.forest();
        let root = t.root().clone();
        let n = target.len();
        let mut words: LinComb<OsbbWord<Shape>> = LinComb::zero();
        // the pair goes to slot `pair_slot` (0 = stays in front)
        for pair_slot in 0..=n {
            let mut pending: LinComb<(Vec<Shape>, Vec<Shape>)> = LinComb::zero();
            for_each_assignment(xs.len(), n + 1, |assign| {
                let mut kept = Vec::new();
                let mut groups: Vec<Vec<Shape>> = vec![Vec::new(); n];
                for (i, &a) in assign.iter().enumerate() {
                    if a == 0 {
                        kept.push(xs[i].clone());
                    } else {
                        groups[a - 1].push(xs[i].clone());
                    }
                }
                let parts: Vec<DComb> = groups
                    .iter()
                    .zip(target.iter())
                    .enumerate()
                    .map(|(i, (g, x))| {
                        if pair_slot == i + 1 {
                            self.graft_sym_pair(g, p, q, x)
                        } else if g.is_empty() {
                            LinComb::monomial(x.clone())
                        } else {
                            self.graft_sym(g, x)
                        }
                    })
                    .collect();
                let kept = sorted_desc(kept);
                for (zs, c) in expand_lists(&parts) {
                    pending.add_term((kept.clone(), sorted_desc(zs)), c);
                }
            });
            for ((kept, zs), c) in pending.iter() {
                let tail = OsbbWord::symmetric(zs.clone());
                let w = if pair_slot == 0 {
                    self.osbb.order_block(kept, p, q, &tail)
                } else {
                    self.osbb.prepend_sym(kept, &LinComb::monomial(tail))
                };
                words.add_scaled(&w, c);
            }
        }
        let out = self.onto_root_comb(&words, &root);
        self.graft_pair_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn onto_root_comb(&self, words: &LinComb<OsbbWord<Shape>>, root: &Root) -> DComb {
        let mut out = LinComb::zero();
        for (w, c) in words.iter() {
            out.add_scaled(&self.word_onto(w, root), c);
        }
        out
    }

    /// `ω ⊳ r` in D coordinates for an OSBB word `ω` over D elements and a root
    /// `r` (a color, or a bracket `[y₁, y₂, y₃]` with `y₁ > y₂`).
    pub fn word_onto(&self, w: &OsbbWord<Shape>, root: &Root) -> DComb {
        let key = (w.clone(), root.clone());
        if let Some(v) = self.onto_memo.borrow().get(&key) {
            return v.clone();
        }
        let out = self.word_onto_uncached(w, root);
        self.onto_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn word_onto_uncached(&self, w: &OsbbWord<Shape>, root: &Root) -> DComb {
        let blocks = w.blocks();
        let first = &blocks[0];
        let xs = &first.sym;
        let Some((y, z)) = &first.bracket else {
            // a purely symmetric word
            return match root {
                Root::Color(_) => LinComb::monomial(Shape::new(xs.clone(), root.clone())),
                Root::Bracket(y1, y2, y3) => {
                    if xs.last().is_none_or(|m| y2 <= m) {
                        LinComb::monomial(Shape::new(xs.clone(), root.clone()))
                    } else {
                        self.sym_onto_unordered_bracket(xs, y1, y2, y3)
                    }
                }
            };
        };
        let rest = OsbbWord::from_blocks(blocks[1..].to_vec()).expect("tail of an OSBB word");
        let mut out = LinComb::zero();
        // main term: 𝔰(X) ⊳ [y, z, ω′ ⊳ r]
        for (v, c) in self.word_onto(&rest, root).iter() {
            out.add_term(Shape::sym_br(xs.clone(), y.clone(), z.clone(), v.clone()), c.clone());
        }
        let rest_factors = factors_of(&rest);
        // [y,z] ⊳ ω′ (derivation on every atom)
        let mut derived: LinComb<Vec<Factor>> = LinComb::zero();
        for (fs, c) in self.derive_factors(y, z, &rest_factors) {
            derived.add_term(fs, c);
        }
        let mut with_pair = vec![Factor::Pair(y.clone(), z.clone())];
        with_pair.extend(rest_factors.iter().cloned());
        let m = xs.len();
        let mut pending: LinComb<Vec<Factor>> = LinComb::zero();
        for mask in 0u64..(1u64 << m) {
            let kept: Vec<Shape> = (0..m).filter(|i| mask >> i & 1 == 0).map(|i| xs[i].clone()).collect();
            let moved: Vec<Shape> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| xs[i].clone()).collect();
            // −𝔰(X_I)·(𝔰(X_J) ⊳ ([y,z] ⊳ ω′))
            for (fs, c) in derived.iter() {
                for (gs, d) in self.distribute(&moved, fs) {
                    pending.add_term(prefix_sym(&kept, gs), -(c * &d));
                }
            }
            // −𝔰(X_I)·(𝔰(X_J) ⊳ ([y,z]·ω′)) for J ≠ ∅
            if !moved.is_empty() {
                for (gs, d) in self.distribute(&moved, &with_pair) {
                    pending.add_term(prefix_sym(&kept, gs), -d);
                }
            }
        }
        let mut words: LinComb<OsbbWord<Shape>> = LinComb::zero();
        for (fs, c) in pending.iter() {
            words.add_scaled(&self.nf_factors(fs), c);
        }
        out.add_assign_ref(&self.onto_root_comb(&words, root));
        out
    }

    /// `𝔰(X) ⊳ [y₁, y₂, y₃]` when `y₂` is not minimal:
    /// `Σ_{I ⊔ J₁ ⊔ J₂} (𝔰(X_I)·[𝔰(X_{J₁}) ⊳ y₁, 𝔰(X_{J₂}) ⊳ y₂]) ⊳ y₃`.
    fn sym_onto_unordered_bracket(&self, xs: &[Shape], y1: &Shape, y2: &Shape, y3: &Shape) -> DComb {
        let m = xs.len();
        let mut pending: LinComb<(Vec<Shape>, Shape, Shape)> = LinComb::zero();
        for_each_assignment(m, 3, |assign| {
            let pick = |k: usize| -> Vec<Shape> {
                (0..m).filter(|&i| assign[i] == k).map(|i| xs[i].clone()).collect()
            };
            let kept = sorted_desc(pick(0));
            let g1 = self.graft_sym(&pick(1), y1);
            let g2 = self.graft_sym(&pick(2), y2);
            for (p, a) in g1.iter() {
                for (q, b) in g2.iter() {
                    pending.add_term((kept.clone(), p.clone(), q.clone()), a * b);
                }
            }
        });
        let mut out = LinComb::zero();
        for ((kept, p, q), c) in pending.iter() {
            out.add_scaled(&self.graft_sym_pair(kept, p, q, y3), c);
        }
        out
    }

    /// `[y, z] ⊳ (factors)`: the derivation `a ↦ [y, z, a]` applied at every atom.
    fn derive_factors(&self, y: &Shape, z: &Shape, fs: &[Factor]) -> Vec<(Vec<Factor>, Rational)> {
        let mut out = Vec::new();
        let act = |a: &Shape| Self::canonical_bracket(y, z, a);
        for (i, f) in fs.iter().enumerate() {
            match f {
                Factor::Sym(xs) => {
                    for j in 0..xs.len() {
                        if j > 0 && xs[j] == xs[j - 1] {
                            continue;
                        }
                        let mult = xs.iter().filter(|x| **x == xs[j]).count() as i64;
                        if let Some((s, b)) = act(&xs[j]) {
                            let mut nx = xs.clone();
                            nx[j] = b;
                            let mut nf = fs.to_vec();
                            nf[i] = Factor::Sym(sorted_desc(nx));
                            out.push((nf, &s * &Rational::from_int(mult)));
                        }
                    }
                }
                Factor::Pair(p, q) => {
                    if let Some((s, b)) = act(p) {
                        let mut nf = fs.to_vec();
                        nf[i] = Factor::Pair(b, q.clone());
                        out.push((nf, s));
                    }
                    if let Some((s, b)) = act(q) {
                        let mut nf = fs.to_vec();
                        nf[i] = Factor::Pair(p.clone(), b);
                        out.push((nf, s));
                    }
                }
            }
        }
        out
    }

    /// `𝔰(S) ⊳ (factors)`: every element of `S` is grafted onto one atom of the factors.
    fn distribute(&self, s: &[Shape], fs: &[Factor]) -> Vec<(Vec<Factor>, Rational)> {
        let atoms: Vec<&Shape> = fs
            .iter()
            .flat_map(|f| match f {
                Factor::Sym(xs) => xs.iter().collect::<Vec<_>>(),
                Factor::Pair(p, q) => vec![p, q],
            })
            .collect();
        let k = atoms.len();
        let mut acc: LinComb<Vec<Factor>> = LinComb::zero();
        if s.is_empty() {
            acc.add_term(fs.to_vec(), Rational::one());
            return acc.iter().map(|(f, c)| (f.clone(), c.clone())).collect();
        }
        for_each_assignment(s.len(), k, |assign| {
            let mut groups: Vec<Vec<Shape>> = vec![Vec::new(); k];
            for (i, &a) in assign.iter().enumerate() {
                groups[a].push(s[i].clone());
            }
            let parts: Vec<DComb> = groups
                .iter()
                .zip(atoms.iter())
                .map(|(g, x)| if g.is_empty() { LinComb::monomial((*x).clone()) } else { self.graft_sym(g, x) })
                .collect();
            for (vals, c) in expand_lists(&parts) {
                let mut it = vals.into_iter();
                let nf: Vec<Factor> = fs
                    .iter()
                    .map(|f| match f {
                        Factor::Sym(xs) => Factor::Sym(sorted_desc((0..xs.len()).map(|_| it.next().unwrap()).collect())),
                        Factor::Pair(..) => {
                            let p = it.next().unwrap();
                            let q = it.next().unwrap();
                            Factor::Pair(p, q)
                        }
                    })
                    .collect();
                acc.add_term(nf, c);
            }
        });
        acc.iter().map(|(f, c)| (f.clone(), c.clone())).collect()
    }

    /// Normal form of a product of factors.
    pub(crate) fn nf_factors(&self, fs: &[Factor]) -> LinComb<OsbbWord<Shape>> {
        let mut acc = LinComb::monomial(OsbbWord::unit());
        for f in fs.iter().rev() {
            acc = match f {
                Factor::Sym(xs) => self.osbb.prepend_sym(xs, &acc),
                Factor::Pair(p, q) => self.osbb.order_block_comb(&[], p, q, &acc),
            };
        }
        acc
    }

    /// D coordinates of a planar tree, computed natively.
    pub fn tree_to_d(&self, t: &PlanarTree) -> DComb {
        if let Some(v) = self.tree_d_memo.borrow().get(t) {
            return v.clone();
        }
        let children: Vec<DComb> = t.branches().iter().map(|b| self.tree_to_d(b)).collect();
        let mut words: LinComb<Vec<Shape>> = LinComb::zero();
        for (w, c) in expand_lists(&children) {
            words.add_term(w, c);
        }
        let nf = self.osbb.rewrite(&words);
        let out = self.onto_root_comb(&nf, &Root::Color(t.root_color()));
        self.tree_d_memo.borrow_mut().insert(t.clone(), out.clone());
        out
    }

    /// D coordinates of a combination of trees.
    pub fn trees_to_d(&self, v: &LinComb<PlanarTree>) -> DComb {
        v.substitute(|t| self.tree_to_d(t))
    }
}

fn factors_of(w: &OsbbWord<Shape>) -> Vec<Factor> {
    let mut out = Vec::new();
    for b in w.blocks() {
        if !b.sym.is_empty() {
            out.push(Factor::Sym(b.sym.clone()));
        }
        if let Some((y, z)) = &b.bracket {
            out.push(Factor::Pair(y.clone(), z.clone()));
        }
    }
    out
}

fn prefix_sym(kept: &[Shape], mut fs: Vec<Factor>) -> Vec<Factor> {
    if !kept.is_empty() {
        fs.insert(0, Factor::Sym(kept.to_vec()));
    }
    fs
}

