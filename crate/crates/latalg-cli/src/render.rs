//! Rendering of linear combinations as text, as a parseable expression, or as JSON.

use clap::ValueEnum;
use latalg::Rational;
use serde_json::json;

/// Output formats for expression-valued results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TermFormat {
    /// `c₁ m₁ + c₂ m₂ − …` in the text notation of the basis.
    Text,
    /// A single expression in the input grammar.
    Sexpr,
    /// JSON: the terms with exact coefficients plus the whole expression.
    Json,
}

/// One term of a rendered combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    /// The monomial in text notation.
    pub text: String,
    /// The monomial in the input grammar, when it has one.
    pub sexpr: Option<String>,
    /// Its coefficient (never zero).
    pub coeff: Rational,
}

/// Renders `terms` (already in basis order) as text.
pub fn to_text(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let mag = t.coeff.abs();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !mag.is_one() {
            s.push_str(&mag.to_string());
            s.push(' ');
        }
        s.push_str(&t.text);
    }
    s
}

/// Renders `terms` as one expression `(+ t₁ (+ t₂ …))`; `zero` is used for
/// the empty combination. `None` if some monomial has no expression form.
pub fn to_sexpr(terms: &[Term], zero: &str) -> Option<String> {
    let parts: Option<Vec<String>> = terms
        .iter()
        .map(|t| {
            let m = t.sexpr.clone()?;
            Some(if t.coeff.is_one() { m } else { format!("(* {} {m})", t.coeff) })
        })
        .collect();
    let parts = parts?;
    Some(match parts.split_last() {
        None => format!("(* 0 {zero})"),
        Some((last, init)) => init.iter().rev().fold(last.clone(), |acc, p| format!("(+ {p} {acc})")),
    })
}

/// Renders `terms` as pretty JSON with sorted keys.
pub fn to_json(terms: &[Term], zero: &str) -> String {
    let items: Vec<serde_json::Value> = terms
        .iter()
        .map(|t| json!({ "coeff": t.coeff.to_string(), "text": t.text, "sexpr": t.sexpr }))
        .collect();
    let v = json!({ "terms": items, "expression": to_sexpr(terms, zero), "text": to_text(terms) });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
