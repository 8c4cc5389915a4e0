//! Evaluation of parsed expressions in the planar tree basis, in D
//! coordinates, or as Lie triple system monomials.

use latalg::dalg::{graft1, symmetrize, triple_bracket};
use latalg::hall::Tern;
use latalg::lat::{DComb, LatEngine, Shape};
use latalg::lincomb::multilinear;
use latalg::tree::{graft_comb, TreeComb};
use latalg::{Color, LinComb, PlanarTree};

use crate::parse::{Expr, ExprKind, Pos};

/// A node form that the requested evaluation does not support.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: `{form}` is not available here ({reason})")]
pub struct EvalError {
    /// Where the node starts.
    pub pos: Pos,
    /// The offending node keyword.
    pub form: &'static str,
    /// Why it is rejected.
    pub reason: &'static str,
}

/// The element as a combination of planar trees.
pub fn eval_trees(e: &Expr) -> TreeComb {
    match &e.kind {
        ExprKind::Color(c) => LinComb::monomial(PlanarTree::node(*c)),
        ExprKind::Graft(x, y) => graft1(&eval_trees(x), &eval_trees(y)),
        ExprKind::Bracket(x, y, z) => triple_bracket(&eval_trees(x), &eval_trees(y), &eval_trees(z)),
        ExprKind::Sym(xs, r) => {
            let factors: Vec<TreeComb> = xs.iter().map(eval_trees).collect();
            let mut words = LinComb::zero();
            for (word, k) in multilinear(&factors) {
                words.add_scaled(&symmetrize(&word), &k);
            }
            graft_comb(&words, &eval_trees(r))
        }
        ExprKind::Sum(x, y) => eval_trees(x) + eval_trees(y),
        ExprKind::Scale(c, x) => eval_trees(x).scale(c),
    }
}

/// The element in D coordinates of `engine`.
pub fn eval_d(e: &Expr, engine: &LatEngine) -> DComb {
    match &e.kind {
        ExprKind::Color(c) => LinComb::monomial(Shape::color(*c)),
        ExprKind::Graft(x, y) => engine.product(&eval_d(x, engine), &eval_d(y, engine)),
        ExprKind::Bracket(x, y, z) => engine.bracket_d(&eval_d(x, engine), &eval_d(y, engine), &eval_d(z, engine)),
        ExprKind::Sym(xs, r) => {
            let factors: Vec<DComb> = xs.iter().map(|x| eval_d(x, engine)).collect();
            let root = eval_d(r, engine);
            let mut out = LinComb::zero();
            for (word, k) in multilinear(&factors) {
                for (t, l) in root.iter() {
                    out.add_scaled(&engine.graft_sym(&word, t), &(&k * l));
                }
            }
            out
        }
        ExprKind::Sum(x, y) => eval_d(x, engine) + eval_d(y, engine),
        ExprKind::Scale(c, x) => eval_d(x, engine).scale(c),
    }
}

/// The element as a combination of ternary monomials over the colors; only
/// colors, `tb`, `+` and `*` are allowed.
pub fn eval_tern(e: &Expr) -> Result<LinComb<Tern<Color>>, EvalError> {
    let reject = |form| EvalError { pos: e.pos, form, reason: "only colors, tb, + and * describe Lie triple system elements" };
    Ok(match &e.kind {
        ExprKind::Color(c) => LinComb::monomial(Tern::Atom(*c)),
        ExprKind::Bracket(x, y, z) => {
            let (x, y, z) = (eval_tern(x)?, eval_tern(y)?, eval_tern(z)?);
            let mut out = LinComb::zero();
            for (u, a) in x.iter() {
                for (v, b) in y.iter() {
                    for (w, c) in z.iter() {
                        out.add_term(Tern::br(u.clone(), v.clone(), w.clone()), &(a * b) * c);
                    }
                }
            }
            out
        }
        ExprKind::Sum(x, y) => eval_tern(x)? + eval_tern(y)?,
        ExprKind::Scale(c, x) => eval_tern(x)?.scale(c),
        ExprKind::Graft(..) => return Err(reject(">")),
        ExprKind::Sym(..) => return Err(reject("sym")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use latalg::Alphabet;

    #[test]
    fn tree_and_d_evaluations_agree() {
        let al = Alphabet::standard(2);
        let e = LatEngine::new(2);
        for src in [
            "(> a b)",
            "(tb (> a a) a b)",
            "(sym a (> b a) b)",
            "(sym a b (tb a b a))",
            "(+ (* -2/3 (> (> a b) a)) (> a (> b a)))",
        ] {
            let x = parse(src, &al).unwrap();
            assert_eq!(e.trees_to_d(&eval_trees(&x)), eval_d(&x, &e), "{src}");
        }
    }

    #[test]
    fn scalar_arithmetic() {
        let al = Alphabet::standard(1);
        let x = parse("(* 1/2 (+ a a))", &al).unwrap();
        assert_eq!(eval_trees(&x), LinComb::monomial(PlanarTree::node(Color(0))));
    }

    #[test]
    fn tern_evaluation_rejects_grafting() {
        let al = Alphabet::standard(2);
        assert!(eval_tern(&parse("(tb a b (> a b))", &al).unwrap()).is_err());
        assert_eq!(eval_tern(&parse("(+ (tb a b a) (tb a b a))", &al).unwrap()).unwrap().len(), 1);
    }
}
