//! Exact rational linear algebra over sparse vectors.
//!
//! Vectors are [`LinComb`]s keyed by arbitrary monomials. [`Echelon`] keeps a
//! fully reduced (Gauss–Jordan) row set: every pivot monomial occurs in
//! exactly one stored row, so reducing a new vector takes a single pass.

use crate::lincomb::{LinComb, Monomial};
use crate::rational::Rational;

/// A fully reduced row echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon<M: Monomial> {
    rows: Vec<(M, LinComb<M>)>,
}

impl<M: Monomial> Default for Echelon<M> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<M: Monomial> Echelon<M> {
    /// The zero subspace.
    pub fn new() -> Self {
        Self::default()
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after reduction by the stored rows (zero iff `v` is in the span).
    pub fn reduce(&self, v: &LinComb<M>) -> LinComb<M> {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            let c = r.coeff(p);
            if !c.is_zero() {
                r.add_scaled(row, &-c);
            }
        }
        r
    }

    /// True iff `v` lies in the span.
    pub fn contains(&self, v: &LinComb<M>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns true iff the rank grew.
    pub fn insert(&mut self, v: &LinComb<M>) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        // cheapest pivot: the term with the smallest coefficient height
        let (p, lead) = r
            .iter()
            .min_by_key(|(_, c)| c.height())
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero vector has a term");
        let r = r.scale(&lead.recip());
        for (_, row) in self.rows.iter_mut() {
            let c = row.coeff(&p);
            if !c.is_zero() {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.push((p, r));
        true
    }

    /// The stored rows as `(pivot, row)` pairs; each row has coefficient 1 at its pivot.
    pub fn rows(&self) -> &[(M, LinComb<M>)] {
        &self.rows
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<M: Monomial>(vs: &[LinComb<M>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Rank of a dense matrix given by rows.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let vs: Vec<LinComb<usize>> = rows
        .iter()
        .map(|r| LinComb::from_terms(r.iter().cloned().enumerate()))
        .collect();
    rank(&vs)
}

/// Expresses `target` as a combination of `vs`, if possible.
///
/// Returns coefficients `c` with `Σ cᵢ·vᵢ = target`; when `vs` is dependent
/// some solution is returned.
pub fn solve<M: Monomial>(vs: &[LinComb<M>], target: &LinComb<M>) -> Option<Vec<Rational>> {
    // Augment each vector with a tag recording its origin, then eliminate.
    #[derive(Clone, PartialEq, Eq, Hash, Debug)]
    enum Key<M> {
        Main(M),
        Tag(usize),
    }
    let mut e: Echelon<Key<M>> = Echelon::new();
    for (i, v) in vs.iter().enumerate() {
        let mut aug: LinComb<Key<M>> = v.map_monomials(|m| Key::Main(m.clone()));
        aug.add_term(Key::Tag(i), Rational::one());
        // Insert only while pivots can be chosen among main coordinates.
        let r = e.reduce(&aug);
        if r.iter().any(|(k, _)| matches!(k, Key::Main(_))) {
            // pivot on a main coordinate so tags only record provenance
            let (p, lead) = r
                .iter()
                .filter(|(k, _)| matches!(k, Key::Main(_)))
                .min_by_key(|(_, c)| c.height())
                .map(|(m, c)| (m.clone(), c.clone()))
                .expect("main term present");
            let rr = r.scale(&lead.recip());
            for (_, row) in e.rows.iter_mut() {
                let c = row.coeff(&p);
                if !c.is_zero() {
                    row.add_scaled(&rr, &-c);
                }
            }
            e.rows.push((p, rr));
        }
    }
    let t: LinComb<Key<M>> = target.map_monomials(|m| Key::Main(m.clone()));
    let r = e.reduce(&t);
    if r.iter().any(|(k, _)| matches!(k, Key::Main(_))) {
        return None;
    }
    // target − Σ (tag coefficients) vᵢ = 0  ⇒  cᵢ = −tagᵢ
    let mut out = vec![Rational::zero(); vs.len()];
    for (k, c) in r.iter() {
        if let Key::Tag(i) = k {
            out[*i] = -c.clone();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(u8, i64)]) -> LinComb<u8> {
        LinComb::from_terms(xs.iter().map(|&(m, c)| (m, Rational::from_int(c))))
    }

    #[test]
    fn rank_and_membership() {
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 1)]);
        let c = a.clone() + b.clone().scale(&Rational::from_int(3));
        assert_eq!(rank(&[a.clone(), b.clone(), c.clone()]), 2);
        let mut e = Echelon::new();
        e.insert(&a);
        e.insert(&b);
        assert!(e.contains(&c));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn solve_recovers_coefficients() {
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 1)]);
        let target = a.scale(&Rational::new(1, 2)) + b.scale(&Rational::from_int(-4));
        let sol = solve(&[a.clone(), b.clone()], &target).unwrap();
        assert_eq!(sol, vec![Rational::new(1, 2), Rational::from_int(-4)]);
        assert!(solve(&[a], &v(&[(2, 1)])).is_none());
    }

    #[test]
    fn dense_rank_identity() {
        let rows: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| Rational::from_int((i == j) as i64)).collect())
            .collect();
        assert_eq!(dense_rank(&rows), 4);
    }
}
