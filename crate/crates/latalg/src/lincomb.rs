//! Finite formal linear combinations with exact rational coefficients.
//!
//! [`LinComb`] is the value type of every rewriting operation in the crate: a
//! map from canonical monomials to nonzero [`Rational`] coefficients. Zero
//! coefficients are never stored, so two combinations are equal exactly when
//! their maps are equal.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::rational::Rational;

/// Requirements on a monomial key: canonical structural equality and hashing.
pub trait Monomial: Clone + Eq + Hash + fmt::Debug {}
impl<T: Clone + Eq + Hash + fmt::Debug> Monomial for T {}

/// A finite linear combination `Σ c_m · m` of canonical monomials.
#[derive(Clone)]
pub struct LinComb<M: Monomial> {
    terms: FxHashMap<M, Rational>,
}

impl<M: Monomial> Default for LinComb<M> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial> LinComb<M> {
    /// The empty combination.
    pub fn zero() -> Self {
        LinComb { terms: FxHashMap::default() }
    }

    /// `1 · m`.
    pub fn monomial(m: M) -> Self {
        Self::term(m, Rational::one())
    }

    /// `c · m` (empty if `c` is zero).
    pub fn term(m: M, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    /// Collects `(monomial, coefficient)` pairs, summing repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (M, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    /// Adds `c · m` in place, pruning the entry if it cancels.
    pub fn add_term(&mut self, m: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += &c;
                if v.is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, other: &LinComb<M>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Adds `other` in place.
    pub fn add_assign_ref(&mut self, other: &LinComb<M>) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.clone());
        }
    }

    /// `c · self`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// True iff no term is stored.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`LinComb::is_zero`]; provided for container-style call sites.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &M) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over stored terms in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = (&M, &Rational)> {
        self.terms.iter()
    }

    /// Iterates over stored monomials in unspecified order.
    pub fn monomials(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }

    /// Linear extension of a monomial-level map: `Σ c_m · f(m)`.
    pub fn substitute<N: Monomial, F: FnMut(&M) -> LinComb<N>>(&self, mut f: F) -> LinComb<N> {
        let mut out = LinComb::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Maps monomials through an injective-or-not function, summing collisions.
    pub fn map_monomials<N: Monomial, F: FnMut(&M) -> N>(&self, mut f: F) -> LinComb<N> {
        LinComb::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Terms sorted by the given monomial order (deterministic output).
    pub fn sorted_terms_by<F: FnMut(&M, &M) -> Ordering>(&self, mut cmp: F) -> Vec<(M, Rational)> {
        let mut v: Vec<(M, Rational)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| cmp(&a.0, &b.0));
        v
    }

    /// The term whose monomial is largest in the given order.
    pub fn max_term_by<F: FnMut(&M, &M) -> Ordering>(&self, mut cmp: F) -> Option<(M, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// Keeps only the terms satisfying the predicate.
    pub fn filter<F: FnMut(&M) -> bool>(&self, mut keep: F) -> Self {
        LinComb {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

impl<M: Monomial + Ord> LinComb<M> {
    /// Terms sorted by the monomial's own order.
    pub fn sorted_terms(&self) -> Vec<(M, Rational)> {
        self.sorted_terms_by(|a, b| a.cmp(b))
    }
}

impl<M: Monomial> PartialEq for LinComb<M> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<M: Monomial> Eq for LinComb<M> {}

impl<M: Monomial> fmt::Debug for LinComb<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        items.sort();
        write!(f, "{}", items.join(" + "))
    }
}

impl<M: Monomial> Add for LinComb<M> {
    type Output = LinComb<M>;
    fn add(mut self, rhs: LinComb<M>) -> LinComb<M> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<M: Monomial> Sub for LinComb<M> {
    type Output = LinComb<M>;
    fn sub(mut self, rhs: LinComb<M>) -> LinComb<M> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<M: Monomial> Neg for LinComb<M> {
    type Output = LinComb<M>;
    fn neg(self) -> LinComb<M> {
        LinComb { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<M: Monomial> Mul<&Rational> for LinComb<M> {
    type Output = LinComb<M>;
    fn mul(self, rhs: &Rational) -> LinComb<M> {
        self.scale(rhs)
    }
}

impl<M: Monomial> FromIterator<(M, Rational)> for LinComb<M> {
    fn from_iter<I: IntoIterator<Item = (M, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

/// Expands a product of linear combinations multilinearly: each output term
/// is the list of chosen monomials (one per factor, in factor order) with the
/// product of their coefficients.
pub fn multilinear<M: Monomial>(factors: &[LinComb<M>]) -> Vec<(Vec<M>, Rational)> {
    let mut acc: Vec<(Vec<M>, Rational)> = vec![(Vec::with_capacity(factors.len()), Rational::one())];
    for f in factors {
        if f.is_zero() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (prefix, c) in &acc {
            for (m, d) in f.iter() {
                let mut p = prefix.clone();
                p.push(m.clone());
                next.push((p, c * d));
            }
        }
        acc = next;
    }
    acc
}
