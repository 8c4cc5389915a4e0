//! Hall triple sets and the Hall rewriting map for free Lie triple systems.
//!
//! The alphabet is any strictly ordered, graded atom type ([`GradedAtom`]):
//! colors (grade 1) or, in the LAT module, symmetrized trees graded by vertex
//! count. Ternary monomials are ordered by grade, then atoms before brackets,
//! then atoms by the alphabet order and brackets lexicographically by
//! `(u, v, w)`.
//!
//! A bracket `[u, v, w]` of Hall elements is Hall iff `u > v ≤ w` and either
//! `u` is an atom or `u = [a, b, c]` with `c ≤ v`. The rewriting map
//! ([`HallRewriter`]) uses skew symmetry, the cyclic identity and the
//! derivation identity to bring any bracket into this form.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::color::Color;
use crate::lincomb::LinComb;
use crate::rational::Rational;

/// An ordered alphabet with a positive grading.
pub trait GradedAtom: Clone + Eq + Hash + Ord + fmt::Debug {
    /// The grade of the atom (≥ 1).
    fn grade(&self) -> usize;
}

impl GradedAtom for Color {
    fn grade(&self) -> usize {
        1
    }
}

/// An iterated triple bracket over atoms of type `A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tern<A> {
    /// A letter of the alphabet.
    Atom(A),
    /// `[u, v, w]`, with its grade cached.
    Br(Arc<(Tern<A>, Tern<A>, Tern<A>)>, usize),
}

impl<A: GradedAtom> Tern<A> {
    /// `[u, v, w]`.
    pub fn br(u: Tern<A>, v: Tern<A>, w: Tern<A>) -> Self {
        let g = u.grade() + v.grade() + w.grade();
        Tern::Br(Arc::new((u, v, w)), g)
    }

    /// `|m|`: atom grades summed over the leaves.
    pub fn grade(&self) -> usize {
        match self {
            Tern::Atom(a) => a.grade(),
            Tern::Br(_, g) => *g,
        }
    }

    /// The three arguments of a bracket.
    pub fn args(&self) -> Option<(&Tern<A>, &Tern<A>, &Tern<A>)> {
        match self {
            Tern::Atom(_) => None,
            Tern::Br(b, _) => Some((&b.0, &b.1, &b.2)),
        }
    }

    /// The atom, if this is one.
    pub fn atom(&self) -> Option<&A> {
        match self {
            Tern::Atom(a) => Some(a),
            Tern::Br(..) => None,
        }
    }

    /// Renders with a caller-supplied atom printer, brackets as `[u, v, w]`.
    pub fn render_with(&self, atom: &dyn Fn(&A) -> String) -> String {
        match self {
            Tern::Atom(a) => atom(a),
            Tern::Br(b, _) => format!(
                "[{}, {}, {}]",
                b.0.render_with(atom),
                b.1.render_with(atom),
                b.2.render_with(atom)
            ),
        }
    }
}

impl<A: GradedAtom> Ord for Tern<A> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| match (self, other) {
            (Tern::Atom(a), Tern::Atom(b)) => a.cmp(b),
            (Tern::Atom(_), Tern::Br(..)) => Ordering::Less,
            (Tern::Br(..), Tern::Atom(_)) => Ordering::Greater,
            (Tern::Br(x, _), Tern::Br(y, _)) => {
                if Arc::ptr_eq(x, y) {
                    return Ordering::Equal;
                }
                x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)).then_with(|| x.2.cmp(&y.2))
            }
        })
    }
}

impl<A: GradedAtom> PartialOrd for Tern<A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: fmt::Debug> fmt::Debug for Tern<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tern::Atom(a) => write!(f, "{a:?}"),
            Tern::Br(b, _) => write!(f, "[{:?},{:?},{:?}]", b.0, b.1, b.2),
        }
    }
}

/// The Hall membership predicate, checked recursively.
pub fn is_hall<A: GradedAtom>(m: &Tern<A>) -> bool {
    match m.args() {
        None => true,
        Some((u, v, w)) => {
            is_hall(u)
                && is_hall(v)
                && is_hall(w)
                && u > v
                && v <= w
                && match u.args() {
                    None => true,
                    Some((_, _, c)) => c <= v,
                }
        }
    }
}

/// Recursion limit of the rewriting loop; exceeding it indicates a bug.
const DEPTH_LIMIT: usize = 100_000;

/// Hall normal forms of brackets, keyed by their three arguments.
type BracketMemo<A> = FxHashMap<(Tern<A>, Tern<A>, Tern<A>), LinComb<Tern<A>>>;

/// The memoized Hall rewriting map `𝔥`.
pub struct HallRewriter<A: GradedAtom> {
    memo: RefCell<BracketMemo<A>>,
    depth: Cell<usize>,
}

impl<A: GradedAtom> Default for HallRewriter<A> {
    fn default() -> Self {
        HallRewriter { memo: RefCell::default(), depth: Cell::new(0) }
    }
}

impl<A: GradedAtom> HallRewriter<A> {
    /// A rewriter with an empty cache.
    pub fn new() -> Self {
        Self::default()
    }

    /// Rewrites an arbitrary monomial into Hall elements.
    pub fn rewrite_monomial(&self, m: &Tern<A>) -> LinComb<Tern<A>> {
        match m.args() {
            None => LinComb::monomial(m.clone()),
            Some((u, v, w)) => {
                let hu = self.rewrite_monomial(u);
                let hv = self.rewrite_monomial(v);
                let hw = self.rewrite_monomial(w);
                self.bracket(&hu, &hv, &hw)
            }
        }
    }

    /// `𝔥` extended linearly.
    pub fn rewrite(&self, v: &LinComb<Tern<A>>) -> LinComb<Tern<A>> {
        v.substitute(|m| self.rewrite_monomial(m))
    }

    /// `𝔥([x, y, z])` for combinations of Hall elements.
    pub fn bracket(&self, x: &LinComb<Tern<A>>, y: &LinComb<Tern<A>>, z: &LinComb<Tern<A>>) -> LinComb<Tern<A>> {
        let mut out = LinComb::zero();
        for (u, a) in x.iter() {
            for (v, b) in y.iter() {
                let ab = a * b;
                for (w, c) in z.iter() {
                    out.add_scaled(&self.bracket_hall(u, v, w), &(&ab * c));
                }
            }
        }
        out
    }

    /// `𝔥([u, v, w])` for Hall elements `u, v, w`.
    pub fn bracket_hall(&self, u: &Tern<A>, v: &Tern<A>, w: &Tern<A>) -> LinComb<Tern<A>> {
        match u.cmp(v) {
            Ordering::Equal => return LinComb::zero(),
            Ordering::Less => return -self.bracket_hall(v, u, w),
            Ordering::Greater => {}
        }
        if v > w {
            // cyclic identity: [u,v,w] = [u,w,v] − [v,w,u]
            let mut out = self.bracket_hall(u, w, v);
            out.add_scaled(&self.bracket_hall(v, w, u), &Rational::from_int(-1));
            return out;
        }
        let (a, b, c) = match u.args() {
            None => return LinComb::monomial(Tern::br(u.clone(), v.clone(), w.clone())),
            Some(args) => args,
        };
        if c <= v {
            return LinComb::monomial(Tern::br(u.clone(), v.clone(), w.clone()));
        }
        let key = (u.clone(), v.clone(), w.clone());
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let d = self.depth.get() + 1;
        assert!(d < DEPTH_LIMIT, "Hall rewriting exceeded its recursion limit");
        self.depth.set(d);
        // derivation identity: [[a,b,c],v,w] = [a,b,[c,v,w]] − [c,[a,b,v],w] − [c,v,[a,b,w]]
        let one = LinComb::monomial;
        let mut out = self.bracket(&one(a.clone()), &one(b.clone()), &self.bracket_hall(c, v, w));
        out.add_scaled(
            &self.bracket(&one(c.clone()), &self.bracket_hall(a, b, v), &one(w.clone())),
            &Rational::from_int(-1),
        );
        out.add_scaled(
            &self.bracket(&one(c.clone()), &one(v.clone()), &self.bracket_hall(a, b, w)),
            &Rational::from_int(-1),
        );
        self.depth.set(d - 1);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }
}

/// Hall elements organized by grade, built one grade at a time.
///
/// Atoms of grade `g` may depend on lower layers (as in the LAT basis), so
/// each call to [`HallLayers::push_grade`] supplies them explicitly.
#[derive(Clone, Debug)]
pub struct HallLayers<A: GradedAtom> {
    layers: Vec<Vec<Tern<A>>>,
}

impl<A: GradedAtom> Default for HallLayers<A> {
    fn default() -> Self {
        HallLayers { layers: vec![Vec::new()] }
    }
}

impl<A: GradedAtom> HallLayers<A> {
    /// No elements yet; grade 0 is empty.
    pub fn new() -> Self {
        Self::default()
    }

    /// Highest grade built so far.
    pub fn max_grade(&self) -> usize {
        self.layers.len() - 1
    }

    /// Hall elements of one grade, sorted.
    pub fn grade(&self, g: usize) -> &[Tern<A>] {
        self.layers.get(g).map_or(&[], |v| v.as_slice())
    }

    /// All elements up to the current grade, sorted.
    pub fn all(&self) -> Vec<Tern<A>> {
        self.layers.iter().flatten().cloned().collect()
    }

    /// Adds the next grade: the given atoms plus all Hall brackets of that grade.
    pub fn push_grade(&mut self, atoms: Vec<A>) -> &[Tern<A>] {
        let g = self.layers.len();
        let mut layer: Vec<Tern<A>> = atoms.into_iter().map(Tern::Atom).collect();
        for gu in 1..g {
            for gv in 1..g - gu {
                let gw = g - gu - gv;
                if gw == 0 {
                    continue;
                }
                for u in &self.layers[gu] {
                    let c = u.args().map(|(_, _, c)| c);
                    for v in &self.layers[gv] {
                        if u <= v || c.is_some_and(|c| c > v) {
                            continue;
                        }
                        for w in &self.layers[gw] {
                            if v <= w {
                                layer.push(Tern::br(u.clone(), v.clone(), w.clone()));
                            }
                        }
                    }
                }
            }
        }
        layer.sort();
        self.layers.push(layer);
        &self.layers[g]
    }
}

/// All Hall elements over `n_colors` colors up to `max_grade`, sorted.
pub fn hall_generate(n_colors: usize, max_grade: usize) -> Vec<Tern<Color>> {
    let mut layers = HallLayers::new();
    for g in 1..=max_grade {
        let atoms = if g == 1 { (0..n_colors).map(|c| Color(c as u16)).collect() } else { Vec::new() };
        layers.push_grade(atoms);
    }
    layers.all()
}

fn mobius(mut n: u64) -> i64 {
    let mut res = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            res = -res;
        }
        p += 1;
    }
    if n > 1 {
        res = -res;
    }
    res
}

/// Witt's formula: dimension of the degree-`k` part of the free Lie algebra on `n` generators.
pub fn witt(n: u64, k: u64) -> u128 {
    let mut acc: i128 = 0;
    for d in 1..=k {
        if k.is_multiple_of(d) {
            acc += mobius(d) as i128 * (n as i128).pow((k / d) as u32);
        }
    }
    (acc / k as i128) as u128
}

/// Dimension of the grade-`k` part of the free Lie triple system on `n` colors:
/// Witt's count for odd `k`, zero for even `k`.
pub fn lts_dimension(n_colors: u64, grade: u64) -> u128 {
    if grade.is_multiple_of(2) {
        0
    } else {
        witt(n_colors, grade)
    }
}
