//! The subcommands, as functions from parsed flags to output text.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use latalg::hall::{HallRewriter, Tern};
use latalg::lat::LatEngine;
use latalg::osbb::{self, OsbbRewriter};
use latalg::prelie::{prelie_project, NonPlanarTree};
use latalg::tree::TreeComb;
use latalg::{Alphabet, Color};
use serde_json::json;

use crate::cache;
use crate::error::CliError;
use crate::eval::{eval_d, eval_tern, eval_trees};
use crate::listing::{self, render_osbb, Listing, Style, Which};
use crate::parse::parse;
use crate::render::{self, Term, TermFormat};

/// The grade above which enumeration commands refuse to run unless the limit is raised.
pub const DEFAULT_GRADE_LIMIT: usize = 8;

/// The quotient in which a normal form is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NfBasis {
    /// The free LAT algebra, in the basis B.
    Lat,
    /// The free pre-Lie algebra, in non-planar trees.
    Prelie,
    /// No quotient: the planar tree basis of the free D-algebra.
    Tree,
}

/// Output formats for basis listings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    /// Grouped plain text.
    Text,
    /// JSON with sorted keys.
    Json,
    /// LaTeX fragment.
    Latex,
}

/// Output formats for dimension tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimsFormat {
    /// Aligned columns.
    Text,
    /// `grade,count` rows with a header.
    Csv,
    /// JSON with sorted keys.
    Json,
}

/// Builds the alphabet from `--alphabet` and/or `--colors`.
pub fn resolve_alphabet(names: Option<&[String]>, colors: Option<usize>, default_colors: usize) -> Result<Alphabet, CliError> {
    let usage = |e: latalg::AlgebraError| CliError::Usage(e.to_string());
    match (names, colors) {
        (Some(ns), Some(n)) if ns.len() != n => Err(CliError::Usage(format!(
            "--alphabet declares {} colors but --colors={n}",
            ns.len()
        ))),
        (Some(ns), _) => Alphabet::new(ns).map_err(usage),
        (None, Some(0)) => Err(CliError::Usage("--colors must be at least 1".into())),
        (None, Some(n)) => Ok(Alphabet::standard(n)),
        (None, None) => Ok(Alphabet::standard(default_colors)),
    }
}

/// Refuses grades above the safety limit.
pub fn check_limit(max_grade: usize, limit: usize) -> Result<(), CliError> {
    if max_grade > limit {
        return Err(CliError::Usage(format!(
            "--max-grade={max_grade} exceeds the safety limit {limit}; pass --limit={max_grade} to run anyway"
        )));
    }
    Ok(())
}

fn emit(terms: &[Term], al: &Alphabet, format: TermFormat) -> Result<String, CliError> {
    let zero = al.name(Color(0));
    Ok(match format {
        TermFormat::Text => render::to_text(terms) + "\n",
        TermFormat::Sexpr => {
            render::to_sexpr(terms, zero).ok_or_else(|| {
                CliError::Usage("planar trees have no expression form; use --format=text or --format=json".into())
            })? + "\n"
        }
        TermFormat::Json => render::to_json(terms, zero),
    })
}

/// The expression form of a non-planar tree: `c(b₁, …, b_k)` is the image of `𝔰(b₁⋯b_k) ⊳ c`.
fn nonplanar_sexpr(t: &NonPlanarTree, al: &Alphabet) -> String {
    let c = al.name(t.root_color());
    if t.branches().is_empty() {
        return c.to_string();
    }
    let bs: Vec<String> = t.branches().iter().map(|b| nonplanar_sexpr(b, al)).collect();
    format!("(sym {} {c})", bs.join(" "))
}

fn tree_terms(v: &TreeComb, al: &Alphabet, basis: NfBasis) -> Vec<Term> {
    match basis {
        NfBasis::Tree => v.sorted_terms()
            .into_iter()
            .map(|(t, coeff)| Term { text: t.render(al), sexpr: None, coeff })
            .collect(),
        NfBasis::Prelie => prelie_project(v).sorted_terms()
            .into_iter()
            .map(|(t, coeff)| Term { text: t.render(al), sexpr: Some(nonplanar_sexpr(&t, al)), coeff })
            .collect(),
        NfBasis::Lat => {
            let e = LatEngine::new(al.len());
            lat_terms(&e.phi_trees(v), al)
        }
    }
}

fn lat_terms(v: &latalg::lat::DComb, al: &Alphabet) -> Vec<Term> {
    v.sorted_terms_by(LatEngine::cmp_b)
        .into_iter()
        .map(|(x, coeff)| Term { text: x.render(al), sexpr: Some(x.render_sexpr(al)), coeff })
        .collect()
}

/// `nf`: the normal form of an expression in the chosen quotient.
pub fn nf(src: &str, al: &Alphabet, basis: NfBasis, format: TermFormat) -> Result<String, CliError> {
    let x = parse(src, al)?;
    let terms = match basis {
        NfBasis::Lat => {
            let e = LatEngine::new(al.len());
            lat_terms(&e.phi(&eval_d(&x, &e)), al)
        }
        _ => tree_terms(&eval_trees(&x), al, basis),
    };
    emit(&terms, al, format)
}

/// `graft`: `left ⊳ right`, reduced in the chosen quotient.
pub fn graft(left: &str, right: &str, al: &Alphabet, basis: NfBasis, format: TermFormat) -> Result<String, CliError> {
    let (l, r) = (parse(left, al)?, parse(right, al)?);
    let v = latalg::dalg::graft1(&eval_trees(&l), &eval_trees(&r));
    emit(&tree_terms(&v, al, basis), al, format)
}

/// `hall-rewrite`: the Hall normal form of a Lie triple system expression.
pub fn hall_rewrite(src: &str, al: &Alphabet, format: TermFormat) -> Result<String, CliError> {
    let x = parse(src, al)?;
    let h: HallRewriter<Color> = HallRewriter::new();
    let v = h.rewrite(&eval_tern(&x)?);
    let sexpr = |m: &Tern<Color>| -> String {
        fn go(m: &Tern<Color>, al: &Alphabet) -> String {
            match m.args() {
                None => al.name(*m.atom().expect("atom")).to_string(),
                Some((u, v, w)) => format!("(tb {} {} {})", go(u, al), go(v, al), go(w, al)),
            }
        }
        go(m, al)
    };
    let terms: Vec<Term> = v.sorted_terms()
        .into_iter()
        .map(|(m, coeff)| Term { text: m.render_with(&|c| al.name(*c).to_string()), sexpr: Some(sexpr(&m)), coeff })
        .collect();
    emit(&terms, al, format)
}

/// Splits a word given as names separated by whitespace or commas; a single
/// token that is not a color name is read letter by letter.
pub fn parse_word(tokens: &[String], al: &Alphabet) -> Result<Vec<Color>, CliError> {
    let mut names: Vec<String> =
        tokens.iter().flat_map(|t| t.split([',', ' ']).filter(|s| !s.is_empty()).map(str::to_string)).collect();
    if names.len() == 1 && al.lookup(&names[0]).is_err() {
        names = names[0].chars().map(|c| c.to_string()).collect();
    }
    names.iter().map(|n| al.lookup(n).map_err(|e| CliError::Usage(e.to_string()))).collect()
}

/// `osbb-rewrite`: a word as a combination of OSBB words, in `≺_Δ` order.
pub fn osbb_rewrite(word: &[Color], al: &Alphabet, format: TermFormat) -> Result<String, CliError> {
    let rw: OsbbRewriter<Color> = OsbbRewriter::new();
    let v = rw.rewrite_word(word);
    let terms: Vec<Term> = v.sorted_terms_by(osbb::compare)
        .into_iter()
        .map(|(w, coeff)| Term { text: render_osbb(&w, al, Style::Text), sexpr: None, coeff })
        .collect();
    match format {
        TermFormat::Sexpr => Err(CliError::Usage("OSBB words have no expression form; use --format=text or --format=json".into())),
        _ => emit(&terms, al, format),
    }
}

/// Renders a listing in the requested format.
pub fn format_listing(l: &Listing, format: ListFormat) -> String {
    match format {
        ListFormat::Text => l.to_text(),
        ListFormat::Json => l.to_json(),
        ListFormat::Latex => l.to_latex(),
    }
}

/// `basis`: a graded basis listing.
pub fn basis(which: Which, al: &Alphabet, max_grade: usize, format: ListFormat) -> String {
    let style = if format == ListFormat::Latex { Style::Latex } else { Style::Text };
    format_listing(&listing::build(which, al, max_grade, style), format)
}

/// `dims`: the dimension table, plus the comparison with `--expect`.
pub fn dims(
    which: Which,
    al: &Alphabet,
    max_grade: usize,
    expect: Option<&[usize]>,
    format: DimsFormat,
) -> (String, Result<(), CliError>) {
    let counts = listing::dimensions(which, al, max_grade);
    let out = match format {
        DimsFormat::Text => {
            let mut s = format!("# dimensions of {} over {{{}}}\ngrade  count\n", which.name(), al.names().join(", "));
            for (i, c) in counts.iter().enumerate() {
                writeln!(s, "{:>5}  {c}", i + 1).unwrap();
            }
            s
        }
        DimsFormat::Csv => {
            let mut s = "grade,count\n".to_string();
            for (i, c) in counts.iter().enumerate() {
                writeln!(s, "{},{c}", i + 1).unwrap();
            }
            s
        }
        DimsFormat::Json => {
            let v = json!({ "which": which.name(), "alphabet": al.names(), "counts": counts });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    };
    let check = match expect {
        Some(e) if e != counts.as_slice() => Err(CliError::Mismatch(format!("expected {e:?}, computed {counts:?}"))),
        _ => Ok(()),
    };
    (out, check)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

/// `cache write`: computes a listing and stores it.
pub fn cache_write(which: Which, al: &Alphabet, max_grade: usize, path: &Path) -> Result<String, CliError> {
    let l = listing::build(which, al, max_grade, Style::Text);
    std::fs::write(path, cache::encode(&l)).map_err(io_err(path))?;
    Ok(format!("wrote {} elements of {} (grades 1..{max_grade}) to {}\n", l.total(), which.name(), path.display()))
}

/// Loads and validates a cache file.
pub fn cache_load(path: &Path) -> Result<Listing, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    Ok(cache::decode(&text)?)
}

/// `cache read`: prints a cached listing exactly as `basis` would.
pub fn cache_read(path: &Path, format: ListFormat) -> Result<String, CliError> {
    if format == ListFormat::Latex {
        return Err(CliError::Usage("caches store text renderings; use --format=text or --format=json".into()));
    }
    Ok(format_listing(&cache_load(path)?, format))
}

/// `cache verify`: validates a cache file.
pub fn cache_verify(path: &Path) -> Result<String, CliError> {
    let l = cache_load(path)?;
    Ok(format!("ok: {} elements of {} (grades 1..{}), version {}\n", l.total(), l.which.name(), l.grades.len(), cache::CACHE_VERSION))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(n: usize) -> Alphabet {
        Alphabet::standard(n)
    }

    #[test]
    fn normal_forms_of_the_documented_examples() {
        assert_eq!(nf("(tb a a a)", &al(1), NfBasis::Lat, TermFormat::Text).unwrap(), "0\n");
        assert_eq!(nf("(tb a b c)", &al(3), NfBasis::Prelie, TermFormat::Text).unwrap(), "0\n");
        assert_eq!(nf("(* 1/2 (+ a a))", &al(1), NfBasis::Lat, TermFormat::Text).unwrap(), "a\n");
        let lat2 = "(+ (> a (tb a b a)) (* -1 (+ (tb (> a a) b a) (+ (tb a (> a b) a) (tb a b (> a a))))))";
        assert_eq!(nf(lat2, &al(2), NfBasis::Lat, TermFormat::Text).unwrap(), "0\n");
        let lat1 = "(+ (tb (> a b) a b) (+ (tb a b (> a b)) (tb b (> a b) a)))";
        assert_eq!(nf(lat1, &al(2), NfBasis::Lat, TermFormat::Text).unwrap(), "0\n");
    }

    #[test]
    fn the_order_four_bracket_is_a_basis_element() {
        let out = nf("(tb (> a a) a a)", &al(1), NfBasis::Lat, TermFormat::Text).unwrap();
        assert_eq!(out, "[s(a) > a, a, a]\n");
    }

    #[test]
    fn sexpr_output_parses_back_to_the_same_normal_form() {
        let a = al(2);
        for src in ["(> (> a b) (> b a))", "(tb (> a b) b a)", "(sym b (> a a) a)", "(* 3/4 (tb a b (> b a)))"] {
            for basis in [NfBasis::Lat, NfBasis::Prelie] {
                let once = nf(src, &a, basis, TermFormat::Sexpr).unwrap();
                let twice = nf(once.trim(), &a, basis, TermFormat::Sexpr).unwrap();
                assert_eq!(once, twice, "{src} {basis:?}");
            }
        }
    }

    #[test]
    fn graft_in_the_tree_basis() {
        assert_eq!(graft("a", "(> a a)", &al(1), NfBasis::Tree, TermFormat::Text).unwrap(), "a(a(a)) + a(a, a)\n");
    }

    #[test]
    fn hall_and_osbb_rewriting() {
        let out = hall_rewrite("(tb a b a)", &al(2), TermFormat::Text).unwrap();
        assert_eq!(out, "-[b, a, a]\n");
        let w = parse_word(&["ba".to_string()], &al(2)).unwrap();
        assert_eq!(w, vec![Color(1), Color(0)]);
        let out = osbb_rewrite(&w, &al(2), TermFormat::Text).unwrap();
        assert_eq!(out, "1/2 [b, a] + s(b, a)\n");
    }

    #[test]
    fn limits_and_alphabets() {
        assert!(check_limit(9, DEFAULT_GRADE_LIMIT).is_err());
        assert!(check_limit(9, 9).is_ok());
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(resolve_alphabet(Some(&names), None, 1).unwrap().len(), 2);
        assert!(resolve_alphabet(Some(&names), Some(3), 1).is_err());
        assert_eq!(resolve_alphabet(None, Some(3), 1).unwrap().names(), &["a", "b", "c"]);
    }

    #[test]
    fn dims_reports_mismatches() {
        let (_, ok) = dims(Which::Hall, &al(2), 7, Some(&[2, 0, 2, 0, 6, 0, 18]), DimsFormat::Csv);
        assert!(ok.is_ok());
        let (_, bad) = dims(Which::B, &al(1), 3, Some(&[1, 1, 3]), DimsFormat::Text);
        assert_eq!(bad.unwrap_err().exit_code(), 2);
    }
}
