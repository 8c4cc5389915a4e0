//! Ordered symmetric-bracket-block (OSBB) words: a basis of the tensor algebra.
//!
//! An OSBB word is a product `𝔰(X₁)·[y₁,z₁] ⋯ 𝔰(X_{s−1})·[y_{s−1},z_{s−1}] · 𝔰(X_s)`
//! in which every bracket block is *ordered*: `z < y` and `z ≤ x` for every
//! `x` in its symmetric part.
//!
//! # Straightening
//!
//! [`OsbbRewriter`] writes any word as a combination of OSBB words. A word is
//! folded from the right with [`OsbbRewriter::prepend`], which multiplies an
//! atom onto the front of an OSBB word:
//!
//! * the atom joins the leading symmetric part, using the exact identity
//!   `x·𝔰(Y) = 𝔰(Y ∪ x) + Σ c′·𝔰(P)·[x, y_j]·𝔰(Q)` (sum over `j` and splits
//!   `P ⊔ Q` of the remaining indices);
//! * a leading block that became unordered is repaired by
//!   [`OsbbRewriter::order_block`], which pulls the minimal symmetric element
//!   `u` out of `𝔰(X)` and applies the Jacobi-type identity
//!   `u[y,z] = [y,z]u − y[z,u] + [z,u]y + z[y,u] − [y,u]z`.
//!
//! Nested uncached `order_block` calls strictly decrease `(word length,
//! leading symmetric size)` lexicographically, so the procedure terminates;
//! this is asserted at run time. Both entry points are memoized on canonical
//! keys.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use rustc_hash::FxHashMap;

use crate::dalg::{symmetrize, Word};
use crate::lincomb::LinComb;
use crate::linalg;
use crate::rational::{binomial, Rational};

/// Requirements on OSBB atoms: a canonical, strictly totally ordered type.
pub trait OsbbAtom: Clone + Eq + Hash + Ord + fmt::Debug {}
impl<T: Clone + Eq + Hash + Ord + fmt::Debug> OsbbAtom for T {}

/// One block: a symmetric multiset (stored in descending order) with an optional bracket.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Block<A> {
    /// The multiset of the symmetric part, sorted descending.
    pub sym: Vec<A>,
    /// The bracket `[y, z]`, if any.
    pub bracket: Option<(A, A)>,
}

impl<A: OsbbAtom> Block<A> {
    /// A symmetric block; the input order is irrelevant.
    pub fn sym(mut xs: Vec<A>) -> Self {
        xs.sort_by(|a, b| b.cmp(a));
        Block { sym: xs, bracket: None }
    }

    /// A symmetric-bracket block `𝔰(X)·[y, z]`.
    pub fn osb(mut xs: Vec<A>, y: A, z: A) -> Self {
        xs.sort_by(|a, b| b.cmp(a));
        Block { sym: xs, bracket: Some((y, z)) }
    }

    /// Number of atoms in the block.
    pub fn len(&self) -> usize {
        self.sym.len() + if self.bracket.is_some() { 2 } else { 0 }
    }

    /// True iff the block contains no atoms.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True iff the bracket is present and ordered: `z < y` and `z ≤ x` for all `x`.
    pub fn is_ordered(&self) -> bool {
        match &self.bracket {
            None => false,
            Some((y, z)) => z < y && self.sym.last().is_none_or(|m| z <= m),
        }
    }
}

impl<A: fmt::Debug> fmt::Debug for Block<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s(")?;
        for (i, x) in self.sym.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x:?}")?;
        }
        write!(f, ")")?;
        if let Some((y, z)) = &self.bracket {
            write!(f, "[{y:?},{z:?}]")?;
        }
        Ok(())
    }
}

/// A sequence of blocks; every block but the last carries a bracket.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OsbbWord<A> {
    blocks: Vec<Block<A>>,
}

impl<A: OsbbAtom> OsbbWord<A> {
    /// The empty word (tensor unit): a single empty symmetric block.
    pub fn unit() -> Self {
        OsbbWord { blocks: vec![Block::sym(Vec::new())] }
    }

    /// A purely symmetric word `𝔰(X)`.
    pub fn symmetric(xs: Vec<A>) -> Self {
        OsbbWord { blocks: vec![Block::sym(xs)] }
    }

    /// Builds a word from blocks; `None` unless exactly the last block lacks a bracket.
    ///
    /// Blocks need not be ordered (see [`OsbbWord::is_ordered`]).
    pub fn from_blocks(blocks: Vec<Block<A>>) -> Option<Self> {
        let (last, init) = blocks.split_last()?;
        if last.bracket.is_some() || init.iter().any(|b| b.bracket.is_none()) {
            return None;
        }
        Some(OsbbWord { blocks })
    }

    /// The blocks, left to right.
    pub fn blocks(&self) -> &[Block<A>] {
        &self.blocks
    }

    /// Total number of atoms `|ω|`.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    /// True iff this is the unit.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True iff every bracket block is ordered, i.e. this is an OSBB word.
    pub fn is_ordered(&self) -> bool {
        self.blocks[..self.blocks.len() - 1].iter().all(Block::is_ordered)
    }

    /// The atoms in structural order: per block, symmetric part then `y, z`.
    pub fn atoms(&self) -> Vec<A> {
        let mut out = Vec::with_capacity(self.len());
        for b in &self.blocks {
            out.extend(b.sym.iter().cloned());
            if let Some((y, z)) = &b.bracket {
                out.push(y.clone());
                out.push(z.clone());
            }
        }
        out
    }

    /// Keeps the block structure and replaces the atoms positionally (see [`OsbbWord::atoms`]).
    pub fn with_atoms(&self, atoms: &[A]) -> Option<Self> {
        if atoms.len() != self.len() {
            return None;
        }
        let mut it = atoms.iter().cloned();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let sym: Vec<A> = (0..b.sym.len()).map(|_| it.next().unwrap()).collect();
                match &b.bracket {
                    None => Block::sym(sym),
                    Some(_) => {
                        let y = it.next().unwrap();
                        let z = it.next().unwrap();
                        Block::osb(sym, y, z)
                    }
                }
            })
            .collect();
        Some(OsbbWord { blocks })
    }

    fn prepend_block(&self, b: Block<A>) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        blocks.push(b);
        blocks.extend(self.blocks.iter().cloned());
        OsbbWord { blocks }
    }

    fn tail(&self) -> Self {
        OsbbWord { blocks: self.blocks[1..].to_vec() }
    }
}

impl<A: fmt::Debug> fmt::Debug for OsbbWord<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{b:?}")?;
        }
        Ok(())
    }
}

fn cmp_desc_lists<A: Ord>(x: &[A], y: &[A]) -> Ordering {
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

/// Compares two blocks by the symmetric / bracket-block rules of `≺_Δ`.
///
/// * symmetric vs symmetric: size, then the descending lists lexicographically;
/// * bracket vs bracket: symmetric size, then second bracket entry, then first
///   bracket entry, then the symmetric parts;
/// * bracket vs symmetric: the bracket block is larger iff it has more atoms,
///   so at equal length the symmetric block is the larger one.
pub fn compare_blocks<A: Ord>(a: &Block<A>, b: &Block<A>) -> Ordering {
    match (&a.bracket, &b.bracket) {
        (None, None) => cmp_desc_lists(&a.sym, &b.sym),
        (Some((u, v)), Some((w, z))) => a
            .sym
            .len()
            .cmp(&b.sym.len())
            .then_with(|| v.cmp(z))
            .then_with(|| u.cmp(w))
            .then_with(|| a.sym.cmp(&b.sym)),
        (Some(_), None) => {
            if a.sym.len() + 2 > b.sym.len() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (None, Some(_)) => compare_blocks(b, a).reverse(),
    }
}

/// The order `≺_Δ` on OSBB words: total length, then blockwise from the left.
pub fn compare<A: Ord>(w1: &OsbbWord<A>, w2: &OsbbWord<A>) -> Ordering {
    let l1: usize = w1.blocks.iter().map(|b| b.sym.len() + 2 * b.bracket.is_some() as usize).sum();
    let l2: usize = w2.blocks.iter().map(|b| b.sym.len() + 2 * b.bracket.is_some() as usize).sum();
    l1.cmp(&l2)
        .then_with(|| {
            for (a, b) in w1.blocks.iter().zip(w2.blocks.iter()) {
                let o = compare_blocks(a, b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
        .then_with(|| w1.blocks.len().cmp(&w2.blocks.len()))
}

impl<A: Ord> PartialOrd for OsbbWord<A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A: Ord> Ord for OsbbWord<A> {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

/// Expands an OSBB word (ordered or not) into the plain word basis.
pub fn expand<A: OsbbAtom>(w: &OsbbWord<A>) -> LinComb<Word<A>> {
    let mut acc: LinComb<Word<A>> = LinComb::monomial(Vec::new());
    for b in &w.blocks {
        let mut part = symmetrize(&b.sym);
        if let Some((y, z)) = &b.bracket {
            let br = LinComb::from_terms([
                (vec![y.clone(), z.clone()], Rational::one()),
                (vec![z.clone(), y.clone()], Rational::from_int(-1)),
            ]);
            part = crate::dalg::concat(&part, &br);
        }
        acc = crate::dalg::concat(&acc, &part);
    }
    acc
}

/// Expands a combination of OSBB words into plain words.
pub fn expand_comb<A: OsbbAtom>(v: &LinComb<OsbbWord<A>>) -> LinComb<Word<A>> {
    v.substitute(expand)
}

/// One correction term `c·𝔰(P)·[x, y]·𝔰(Q)` of a symmetric-absorption identity.
struct Correction<A> {
    coeff: Rational,
    p: Vec<A>,
    y: A,
    q: Vec<A>,
}

/// The terms of `x·𝔰(Y) − 𝔰(Y ∪ x)` (`prepend = true`) or `𝔰(Y)·x − 𝔰(Y ∪ x)`.
///
/// With `m = |Y|` and `q = |P| + 1` the coefficients are
/// `(m−q+1) / ((m+1)·m·C(m−1,q−1))` for prepending and
/// `−q / ((m+1)·m·C(m−1,q−1))` for appending.
fn corrections<A: OsbbAtom>(ys: &[A], prepend: bool) -> Vec<Correction<A>> {
    let m = ys.len();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    for j in 0..m {
        let rest: Vec<usize> = (0..m).filter(|&i| i != j).collect();
        for mask in 0u64..(1u64 << rest.len()) {
            let mut p = Vec::new();
            let mut q = Vec::new();
            for (bit, &i) in rest.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    p.push(ys[i].clone());
                } else {
                    q.push(ys[i].clone());
                }
            }
            let qq = p.len() as i64 + 1;
            let denom = Rational::from_int((m as i64 + 1) * m as i64)
                * Rational::from(num_bigint::BigInt::from(binomial(m as u64 - 1, qq as u64 - 1)));
            let num = if prepend { Rational::from_int(m as i64 - qq + 1) } else { Rational::from_int(-qq) };
            let coeff = &num / &denom;
            if coeff.is_zero() {
                continue;
            }
            out.push(Correction { coeff, p, y: ys[j].clone(), q });
        }
    }
    out
}

/// Normal forms of `x · β`, keyed by `(x, β)`.
type PrependMemo<A> = FxHashMap<(A, OsbbWord<A>), LinComb<OsbbWord<A>>>;
/// Normal forms of `𝔰(X)·[y,z]·ρ`, keyed by `(X, y, z, ρ)`.
type OrderMemo<A> = FxHashMap<(Vec<A>, A, A, OsbbWord<A>), LinComb<OsbbWord<A>>>;

/// Memoized straightening of words into the OSBB basis.
pub struct OsbbRewriter<A: OsbbAtom> {
    prepend_memo: RefCell<PrependMemo<A>>,
    order_memo: RefCell<OrderMemo<A>>,
    /// `(word length, leading symmetric size)` of the active uncached
    /// `order_block` calls; each entry must be strictly below the previous one.
    active: RefCell<Vec<(usize, usize)>>,
}

impl<A: OsbbAtom> Default for OsbbRewriter<A> {
    fn default() -> Self {
        OsbbRewriter { prepend_memo: RefCell::default(), order_memo: RefCell::default(), active: RefCell::default() }
    }
}

impl<A: OsbbAtom> OsbbRewriter<A> {
    /// A rewriter with empty caches.
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of cached entries (diagnostics).
    pub fn cache_size(&self) -> usize {
        self.prepend_memo.borrow().len() + self.order_memo.borrow().len()
    }

    /// Rewrites a single plain word.
    pub fn rewrite_word(&self, word: &[A]) -> LinComb<OsbbWord<A>> {
        let mut acc = LinComb::monomial(OsbbWord::unit());
        for x in word.iter().rev() {
            acc = self.prepend_comb(x, &acc);
        }
        acc
    }

    /// Rewrites a combination of plain words.
    pub fn rewrite(&self, v: &LinComb<Word<A>>) -> LinComb<OsbbWord<A>> {
        v.substitute(|w| self.rewrite_word(w))
    }

    /// Normal form of an arbitrary (possibly unordered) block word.
    pub fn normalize(&self, w: &OsbbWord<A>) -> LinComb<OsbbWord<A>> {
        let mut acc = LinComb::monomial(OsbbWord::unit());
        for b in w.blocks.iter().rev() {
            acc = self.multiply_block(b, &acc);
        }
        acc
    }

    /// `b · R` for a block `b` and a normal-form combination `R`.
    pub fn multiply_block(&self, b: &Block<A>, r: &LinComb<OsbbWord<A>>) -> LinComb<OsbbWord<A>> {
        match &b.bracket {
            Some((y, z)) => self.order_block_comb(&b.sym, y, z, r),
            None => self.prepend_sym(&b.sym, r),
        }
    }

    /// `ω · R` for a normal-form combination `R`.
    pub fn multiply(&self, w: &OsbbWord<A>, r: &LinComb<OsbbWord<A>>) -> LinComb<OsbbWord<A>> {
        let mut acc = r.clone();
        for b in w.blocks.iter().rev() {
            acc = self.multiply_block(b, &acc);
        }
        acc
    }

    /// `𝔰(Y) · R`, via `𝔰(Y) = (1/m) Σ_j y_j · 𝔰(Y ∖ y_j)`.
    pub fn prepend_sym(&self, ys: &[A], r: &LinComb<OsbbWord<A>>) -> LinComb<OsbbWord<A>> {
        let mut sorted = ys.to_vec();
        sorted.sort_by(|a, b| b.cmp(a));
        let mut memo: FxHashMap<Vec<A>, LinComb<OsbbWord<A>>> = FxHashMap::default();
        self.prepend_sym_rec(&sorted, r, &mut memo)
    }

    fn prepend_sym_rec(
        &self,
        ys: &[A],
        r: &LinComb<OsbbWord<A>>,
        memo: &mut FxHashMap<Vec<A>, LinComb<OsbbWord<A>>>,
    ) -> LinComb<OsbbWord<A>> {
        if ys.is_empty() {
            return r.clone();
        }
        if let Some(v) = memo.get(ys) {
            return v.clone();
        }
        let m = ys.len() as i64;
        let mut out = LinComb::zero();
        let mut i = 0;
        while i < ys.len() {
            let mut j = i;
            while j < ys.len() && ys[j] == ys[i] {
                j += 1;
            }
            let mut rest = ys.to_vec();
            rest.remove(i);
            let inner = self.prepend_sym_rec(&rest, r, memo);
            let c = Rational::new((j - i) as i64, m);
            out.add_scaled(&self.prepend_comb(&ys[i], &inner), &c);
            i = j;
        }
        memo.insert(ys.to_vec(), out.clone());
        out
    }

    /// `[y, z] · R`.
    pub fn prepend_bracket(&self, y: &A, z: &A, r: &LinComb<OsbbWord<A>>) -> LinComb<OsbbWord<A>> {
        self.order_block_comb(&[], y, z, r)
    }

    /// `x · R` for a normal-form combination `R`.
    pub fn prepend_comb(&self, x: &A, r: &LinComb<OsbbWord<A>>) -> LinComb<OsbbWord<A>> {
        let mut out = LinComb::zero();
        for (w, c) in r.iter() {
            out.add_scaled(&self.prepend(x, w), c);
        }
        out
    }

    /// `x · β` for an OSBB word `β`, in normal form.
    pub fn prepend(&self, x: &A, beta: &OsbbWord<A>) -> LinComb<OsbbWord<A>> {
        let key = (x.clone(), beta.clone());
        if let Some(v) = self.prepend_memo.borrow().get(&key) {
            return v.clone();
        }
        let out = self.prepend_uncached(x, beta);
        self.prepend_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn prepend_uncached(&self, x: &A, beta: &OsbbWord<A>) -> LinComb<OsbbWord<A>> {
        let first = &beta.blocks[0];
        let rest = beta.tail();
        let mut grown = first.sym.clone();
        grown.push(x.clone());
        let mut out = match &first.bracket {
            Some((y, z)) => self.order_block(&grown, y, z, &rest),
            None => LinComb::monomial(OsbbWord::symmetric(grown)),
        };
        for corr in corrections(&first.sym, true) {
            let inner = match &first.bracket {
                Some((y, z)) => rest.prepend_block(Block::osb(corr.q.clone(), y.clone(), z.clone())),
                None => OsbbWord::symmetric(corr.q.clone()),
            };
            out.add_scaled(&self.order_block(&corr.p, x, &corr.y, &inner), &corr.coeff);
        }
        out
    }

    /// `𝔰(X)·[y,z]·R` in normal form, for a normal-form combination `R`.
    pub fn order_block_comb(&self, xs: &[A], y: &A, z: &A, r: &LinComb<OsbbWord<A>>) -> LinComb<OsbbWord<A>> {
        let mut out = LinComb::zero();
        for (w, c) in r.iter() {
            out.add_scaled(&self.order_block(xs, y, z, w), c);
        }
        out
    }

    /// `𝔰(X)·[y,z]·ρ` in normal form, for an OSBB word `ρ`.
    pub fn order_block(&self, xs: &[A], y: &A, z: &A, rho: &OsbbWord<A>) -> LinComb<OsbbWord<A>> {
        match y.cmp(z) {
            Ordering::Equal => return LinComb::zero(),
            Ordering::Less => return -self.order_block(xs, z, y, rho),
            Ordering::Greater => {}
        }
        let mut sorted = xs.to_vec();
        sorted.sort_by(|a, b| b.cmp(a));
        if sorted.last().is_none_or(|m| z <= m) {
            return LinComb::monomial(rho.prepend_block(Block { sym: sorted, bracket: Some((y.clone(), z.clone())) }));
        }
        let key = (sorted.clone(), y.clone(), z.clone(), rho.clone());
        if let Some(v) = self.order_memo.borrow().get(&key) {
            return v.clone();
        }
        let measure = (sorted.len() + 2 + rho.len(), sorted.len());
        {
            let mut active = self.active.borrow_mut();
            assert!(active.last().is_none_or(|&top| measure < top), "OSBB straightening failed to decrease {measure:?}");
            active.push(measure);
        }
        let out = self.order_block_uncached(sorted, y, z, rho);
        self.active.borrow_mut().pop();
        self.order_memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn order_block_uncached(&self, mut xs: Vec<A>, y: &A, z: &A, rho: &OsbbWord<A>) -> LinComb<OsbbWord<A>> {
        // u = min X < z < y; X = X' ∪ {u}
        let u = xs.pop().expect("unordered block has a symmetric part");
        let xp = xs;
        let one = Rational::one();
        let minus = Rational::from_int(-1);
        let mut out = LinComb::zero();

        // 𝔰(X) = 𝔰(X')·u − (𝔰(X')·u − 𝔰(X))
        // 𝔰(X')·u[y,z]ρ with u[y,z] = [y,z]u − y[z,u] + [z,u]y + z[y,u] − [y,u]z
        // T1: 𝔰(X')[y,z]·(uρ)
        out.add_scaled(&self.order_block_comb(&xp, y, z, &self.prepend(&u, rho)), &one);
        // T2: −𝔰(X')y·[z,u]ρ
        out.add_scaled(&self.sym_letter_bracket(&xp, y, z, &u, rho), &minus);
        // T3: 𝔰(X')[z,u]·(yρ)
        out.add_scaled(&self.order_block_comb(&xp, z, &u, &self.prepend(y, rho)), &one);
        // T4: 𝔰(X')z·[y,u]ρ
        out.add_scaled(&self.sym_letter_bracket(&xp, z, y, &u, rho), &one);
        // T5: −𝔰(X')[y,u]·(zρ)
        out.add_scaled(&self.order_block_comb(&xp, y, &u, &self.prepend(z, rho)), &minus);
        // T6: −(𝔰(X')·u − 𝔰(X))·[y,z]ρ
        for corr in corrections(&xp, false) {
            let inner = self.order_block(&corr.q, y, z, rho);
            let t = self.order_block_comb(&corr.p, &u, &corr.y, &inner);
            out.add_scaled(&t, &-corr.coeff.clone());
        }
        out
    }

    /// `𝔰(X')·a·[b,u]·ρ` where `u ≤ X'` and `u < b` (so `𝔰(Q)[b,u]` is ordered for `Q ⊆ X'`).
    fn sym_letter_bracket(&self, xp: &[A], a: &A, b: &A, u: &A, rho: &OsbbWord<A>) -> LinComb<OsbbWord<A>> {
        let mut grown = xp.to_vec();
        grown.push(a.clone());
        let mut out = self.order_block(&grown, b, u, rho);
        for corr in corrections(xp, false) {
            let inner = rho.prepend_block(Block::osb(corr.q.clone(), b.clone(), u.clone()));
            out.add_scaled(&self.order_block(&corr.p, a, &corr.y, &inner), &corr.coeff);
        }
        out
    }
}

/// All multisets of size `k` from `atoms` (ascending input), each sorted descending.
pub fn multisets<A: Clone>(atoms: &[A], k: usize) -> Vec<Vec<A>> {
    fn rec<A: Clone>(atoms: &[A], k: usize, max_idx: usize, cur: &mut Vec<A>, out: &mut Vec<Vec<A>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (0..=max_idx).rev() {
            cur.push(atoms[i].clone());
            rec(atoms, k - 1, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if atoms.is_empty() {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(atoms, k, atoms.len() - 1, &mut Vec::new(), &mut out);
    out
}

/// All OSBB words of length `k` over the given atoms (ascending, distinct), sorted by `≺_Δ`.
pub fn enumerate<A: OsbbAtom>(atoms: &[A], k: usize) -> Vec<OsbbWord<A>> {
    let mut sorted = atoms.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out = enumerate_rec(&sorted, k);
    out.sort_by(compare);
    out
}

fn enumerate_rec<A: OsbbAtom>(atoms: &[A], k: usize) -> Vec<OsbbWord<A>> {
    let mut out: Vec<OsbbWord<A>> = multisets(atoms, k).into_iter().map(OsbbWord::symmetric).collect();
    for s in 0..=k.saturating_sub(2) {
        if s + 2 > k {
            break;
        }
        let tails = enumerate_rec(atoms, k - s - 2);
        for zi in 0..atoms.len() {
            let z = &atoms[zi];
            for y in &atoms[zi + 1..] {
                for sym in multisets(&atoms[zi..], s) {
                    let b = Block { sym, bracket: Some((y.clone(), z.clone())) };
                    for t in &tails {
                        out.push(t.prepend_block(b.clone()));
                    }
                }
            }
        }
    }
    out
}

/// The number of OSBB words of length `k` over `n` letters, by the block recursion
/// `α_k = C(k+n−1, n−1) + Σ_{i=2}^{k} (Σ_{j=1}^{n−1} (n−j)·C(i−2+n−j, n−j))·α_{k−i}`.
pub fn alpha(k: usize, n: usize) -> u128 {
    let mut a = vec![0u128; k + 1];
    a[0] = 1;
    for kk in 1..=k {
        let mut v = binomial((kk + n - 1) as u64, (n - 1) as u64);
        for i in 2..=kk {
            let mut inner = 0u128;
            for j in 1..n {
                inner += (n - j) as u128 * binomial((i - 2 + n - j) as u64, (n - j) as u64);
            }
            v += inner * a[kk - i];
        }
        a[kk] = v;
    }
    a[k]
}

/// The binomial identity behind the count:
/// `Σ_{j=1}^{n−1} (n−j)·C(k−2+n−j, n−j) + C(k+n−1, n−1) = n·C(k−1+n−1, n−1)`.
pub fn block_count_identity(n: u64, k: u64) -> bool {
    let mut lhs: u128 = 0;
    for j in 1..n {
        lhs += (n - j) as u128 * binomial(k + n - j - 2, n - j);
    }
    lhs += binomial(k + n - 1, n - 1);
    lhs == n as u128 * binomial(k + n - 2, n - 1)
}

/// Replaces atoms of `w` positionally by `replacements` (each `≤` the original),
/// rewrites the resulting block word into the OSBB basis, and reports whether
/// every term is `⪯_Δ w`.
pub fn monotone_bound_check<A: OsbbAtom>(
    rw: &OsbbRewriter<A>,
    w: &OsbbWord<A>,
    replacements: &[A],
) -> bool {
    let Some(replaced) = w.with_atoms(replacements) else {
        return false;
    };
    let nf = rw.normalize(&replaced);
    let ok = nf.monomials().all(|t| compare(t, w) != Ordering::Greater);
    ok
}

/// Independent straightening by solving in the word basis: expresses `word` over
/// all OSBB words of the same length built from its own letters.
pub fn rewrite_by_solve<A: OsbbAtom>(word: &[A]) -> LinComb<OsbbWord<A>> {
    let mut letters = word.to_vec();
    letters.sort();
    letters.dedup();
    let basis = enumerate(&letters, word.len());
    let images: Vec<LinComb<Word<A>>> = basis.iter().map(expand).collect();
    let target = LinComb::monomial(word.to_vec());
    let sol = linalg::solve(&images, &target).expect("OSBB words span the word space");
    LinComb::from_terms(basis.into_iter().zip(sol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_letter_example() {
        // b·a with a < b
        let rw = OsbbRewriter::new();
        let nf = rw.rewrite_word(&['b', 'a']);
        let sym = OsbbWord::symmetric(vec!['a', 'b']);
        let br = OsbbWord::from_blocks(vec![Block::osb(vec![], 'b', 'a'), Block::sym(vec![])]).unwrap();
        let expect = LinComb::monomial(sym) + LinComb::term(br, Rational::new(1, 2));
        assert_eq!(nf, expect);
    }

    #[test]
    fn single_letter() {
        let rw = OsbbRewriter::new();
        assert_eq!(rw.rewrite_word(&['a']), LinComb::monomial(OsbbWord::symmetric(vec!['a'])));
    }

    #[test]
    fn round_trip_small() {
        let rw = OsbbRewriter::new();
        let letters = [0u8, 1, 2];
        for k in 0..=4 {
            for idx in 0..3usize.pow(k as u32) {
                let mut w = Vec::new();
                let mut r = idx;
                for _ in 0..k {
                    w.push(letters[r % 3]);
                    r /= 3;
                }
                let nf = rw.rewrite_word(&w);
                assert!(nf.monomials().all(OsbbWord::is_ordered), "{w:?} -> {nf:?}");
                assert_eq!(expand_comb(&nf), LinComb::monomial(w.clone()), "{w:?}");
            }
        }
    }

    #[test]
    fn matches_linear_solve() {
        let rw = OsbbRewriter::new();
        for w in [vec![2u8, 0, 1], vec![1, 0, 0, 2], vec![2, 1, 0, 0], vec![0, 2, 1, 2]] {
            assert_eq!(rw.rewrite_word(&w), rewrite_by_solve(&w));
        }
    }

    #[test]
    fn counts() {
        for n in 1..=3 {
            for k in 0..=5 {
                let atoms: Vec<u8> = (0..n as u8).collect();
                assert_eq!(enumerate(&atoms, k).len() as u128, (n as u128).pow(k as u32));
                assert_eq!(alpha(k, n), (n as u128).pow(k as u32));
            }
        }
        assert_eq!(alpha(1, 7), 7);
        assert_eq!(alpha(0, 3), 1);
    }

    #[test]
    fn block_count_identity_small() {
        for n in 1..=20 {
            for k in 1..=20 {
                assert!(block_count_identity(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn order_examples() {
        let aa = OsbbWord::symmetric(vec!['a', 'a']);
        let ab = OsbbWord::symmetric(vec!['a', 'b']);
        assert_eq!(compare(&aa, &ab), Ordering::Less);
        let osb4 = OsbbWord::from_blocks(vec![Block::osb(vec!['a', 'a'], 'b', 'a'), Block::sym(vec![])]).unwrap();
        let sym3 = OsbbWord::symmetric(vec!['c', 'c', 'c']);
        assert_eq!(compare(&osb4, &sym3), Ordering::Greater);
        assert_eq!(compare(&osb4, &osb4), Ordering::Equal);
    }
}
