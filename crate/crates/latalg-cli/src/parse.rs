//! The S-expression grammar for algebra elements.
//!
//! ```text
//! expr := color                      a declared color name
//!       | (> expr expr)              grafting x ⊳ y
//!       | (tb expr expr expr)        triple bracket [x, y, z]
//!       | (sym expr* expr)           𝔰(x₁⋯x_n) ⊳ r
//!       | (+ expr expr)              sum
//!       | (* rational expr)          scalar multiple, rational = p | -p | p/q
//! ```
//!
//! Whitespace is insignificant and `;` starts a comment running to the end of
//! the line. Every error carries the 1-based line and column where it occurs.

use std::fmt;

use latalg::{Alphabet, Color, Rational};

/// A position in the source text (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    /// Line number.
    pub line: usize,
    /// Column number, in characters.
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// What went wrong while parsing.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    /// An identifier that is neither a declared color nor a node keyword.
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    /// A node form applied to the wrong number of arguments.
    #[error("`{form}` expects {expected}, found {found}")]
    Arity {
        /// The node keyword.
        form: String,
        /// Human-readable expected count.
        expected: &'static str,
        /// The number of arguments supplied.
        found: usize,
    },
    /// A scalar that is not `p`, `-p` or `p/q` with `q ≠ 0`.
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    /// A `)` without a matching `(`, or input after the expression.
    #[error("unexpected `{0}`")]
    Unexpected(String),
    /// The input ended inside an expression (or was empty).
    #[error("unexpected end of input")]
    UnexpectedEnd,
    /// A list whose head is not a node keyword.
    #[error("expected one of `>`, `tb`, `sym`, `+`, `*` after `(`, found `{0}`")]
    UnknownForm(String),
}

/// A parse error with its location.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    /// Where the error occurred.
    pub pos: Pos,
    /// The error itself.
    pub kind: ParseErrorKind,
}

/// A parsed expression node.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    /// The node.
    pub kind: ExprKind,
    /// Where the node starts.
    pub pos: Pos,
}

/// The node forms of the grammar.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    /// A single vertex of the given color.
    Color(Color),
    /// `x ⊳ y`.
    Graft(Box<Expr>, Box<Expr>),
    /// `[x, y, z]`.
    Bracket(Box<Expr>, Box<Expr>, Box<Expr>),
    /// `𝔰(x₁⋯x_n) ⊳ r`.
    Sym(Vec<Expr>, Box<Expr>),
    /// `x + y`.
    Sum(Box<Expr>, Box<Expr>),
    /// `c · x`.
    Scale(Rational, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<(Tok, Pos)> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 0);
    let mut chars = text.chars().peekable();
    let mut atom: Option<(String, Pos)> = None;
    let flush = |atom: &mut Option<(String, Pos)>, out: &mut Vec<(Tok, Pos)>| {
        if let Some((s, p)) = atom.take() {
            out.push((Tok::Atom(s), p));
        }
    };
    while let Some(c) = chars.next() {
        col += 1;
        let pos = Pos { line, col };
        match c {
            '\n' => {
                flush(&mut atom, &mut out);
                line += 1;
                col = 0;
            }
            ';' => {
                flush(&mut atom, &mut out);
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' => {
                flush(&mut atom, &mut out);
                out.push((Tok::Open, pos));
            }
            ')' => {
                flush(&mut atom, &mut out);
                out.push((Tok::Close, pos));
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => match &mut atom {
                Some((s, _)) => s.push(c),
                None => atom = Some((c.to_string(), pos)),
            },
        }
    }
    flush(&mut atom, &mut out);
    out
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    alphabet: &'a Alphabet,
    end: Pos,
}

impl Parser<'_> {
    fn err<T>(&self, pos: Pos, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { pos, kind })
    }

    fn next(&mut self) -> Result<(Tok, Pos), ParseError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => self.err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let (tok, pos) = self.next()?;
        match tok {
            Tok::Close => self.err(pos, ParseErrorKind::Unexpected(")".into())),
            Tok::Atom(name) => match self.alphabet.lookup(&name) {
                Ok(c) => Ok(Expr { kind: ExprKind::Color(c), pos }),
                Err(_) => self.err(pos, ParseErrorKind::UnknownIdentifier(name)),
            },
            Tok::Open => self.list(pos),
        }
    }

    fn list(&mut self, open: Pos) -> Result<Expr, ParseError> {
        let (head, hpos) = self.next()?;
        let form = match head {
            Tok::Atom(s) => s,
            Tok::Open => return self.err(hpos, ParseErrorKind::UnknownForm("(".into())),
            Tok::Close => return self.err(hpos, ParseErrorKind::UnknownForm(")".into())),
        };
        let scalar = if form == "*" { Some(self.rational()?) } else { None };
        let mut args = Vec::new();
        loop {
            match self.toks.get(self.at) {
                Some((Tok::Close, _)) => {
                    self.at += 1;
                    break;
                }
                Some(_) => args.push(self.expr()?),
                None => return self.err(self.end, ParseErrorKind::UnexpectedEnd),
            }
        }
        let arity = |expected: &'static str, ok: bool, found: usize| -> Result<(), ParseError> {
            if ok {
                Ok(())
            } else {
                Err(ParseError { pos: open, kind: ParseErrorKind::Arity { form: form.clone(), expected, found } })
            }
        };
        let n = args.len();
        let mut it = args.into_iter();
        let mut take = || Box::new(it.next().expect("arity checked"));
        let kind = match form.as_str() {
            ">" => {
                arity("2 arguments", n == 2, n)?;
                ExprKind::Graft(take(), take())
            }
            "tb" => {
                arity("3 arguments", n == 3, n)?;
                ExprKind::Bracket(take(), take(), take())
            }
            "+" => {
                arity("2 arguments", n == 2, n)?;
                ExprKind::Sum(take(), take())
            }
            "*" => {
                arity("a scalar and 1 argument", n == 1, n + 1)?;
                ExprKind::Scale(scalar.expect("parsed above"), take())
            }
            "sym" => {
                arity("at least 1 argument (the root)", n >= 1, n)?;
                let mut xs: Vec<Expr> = it.collect();
                let root = xs.pop().expect("nonempty");
                ExprKind::Sym(xs, Box::new(root))
            }
            _ => return self.err(hpos, ParseErrorKind::UnknownForm(form.clone())),
        };
        Ok(Expr { kind, pos: open })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let (tok, pos) = self.next()?;
        match tok {
            Tok::Atom(s) => s.parse().or_else(|_| self.err(pos, ParseErrorKind::MalformedRational(s))),
            Tok::Open => self.err(pos, ParseErrorKind::MalformedRational("(".into())),
            Tok::Close => self.err(pos, ParseErrorKind::MalformedRational(")".into())),
        }
    }
}

/// Parses exactly one expression over the given alphabet.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Expr, ParseError> {
    let lines: Vec<&str> = text.split('\n').collect();
    let end = Pos { line: lines.len(), col: lines.last().map_or(0, |l| l.chars().count()) + 1 };
    let mut p = Parser { toks: tokenize(text), at: 0, alphabet, end };
    let e = p.expr()?;
    if let Some((tok, pos)) = p.toks.get(p.at) {
        let shown = match tok {
            Tok::Open => "(".to_string(),
            Tok::Close => ")".to_string(),
            Tok::Atom(s) => s.clone(),
        };
        return Err(ParseError { pos: *pos, kind: ParseErrorKind::Unexpected(shown) });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::standard(3)
    }

    #[test]
    fn parses_every_form() {
        let al = ab();
        let e = parse("(tb (> a a) a a)", &al).unwrap();
        assert!(matches!(e.kind, ExprKind::Bracket(..)));
        let e = parse("(* 1/2 (+ a b)) ; trailing comment", &al).unwrap();
        match e.kind {
            ExprKind::Scale(c, _) => assert_eq!(c, Rational::new(1, 2)),
            k => panic!("{k:?}"),
        }
        let e = parse("(sym a b c)", &al).unwrap();
        match e.kind {
            ExprKind::Sym(xs, r) => {
                assert_eq!(xs.len(), 2);
                assert_eq!(r.kind, ExprKind::Color(Color(2)));
            }
            k => panic!("{k:?}"),
        }
        assert!(matches!(parse("(sym a)", &al).unwrap().kind, ExprKind::Sym(..)));
    }

    #[test]
    fn errors_carry_positions() {
        let al = ab();
        let e = parse("(> a\n   x)", &al).unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 4 });
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("x".into()));
        let e = parse("  (tb a a)", &al).unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 3 });
        assert!(matches!(e.kind, ParseErrorKind::Arity { found: 2, .. }));
        let e = parse("(* 1/0 a)", &al).unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 4 });
        assert_eq!(e.kind, ParseErrorKind::MalformedRational("1/0".into()));
        let e = parse("(> a a", &al).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse("a b", &al).unwrap_err();
        assert_eq!((e.pos, e.kind), (Pos { line: 1, col: 3 }, ParseErrorKind::Unexpected("b".into())));
        let e = parse("(foo a)", &al).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownForm("foo".into()));
        assert_eq!(parse("", &al).unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
    }
}
