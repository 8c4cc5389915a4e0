//! The shared monomial type of the S, D and B bases.
//!
//! Every element of the three bases has the form `Sym(X, root)`, where `X` is
//! a multiset of shapes (stored descending) and the root is either a color or
//! a bracket `(y, z, t)` of three shapes. The three bases read this structure
//! differently:
//!
//! | shape                 | S-meaning                  | D-meaning              |
//! |-----------------------|----------------------------|------------------------|
//! | `Sym(X, c)`           | `𝔰(X) ⊳ c`                 | `𝔰(X) ⊳ c`             |
//! | `Sym(X, Br(y, z, t))` | `(𝔰(X)·[y,z]·ω) ⊳ c` where `t = ω ⊳ c` | `𝔰(X) ⊳ [y, z, t]` |
//!
//! A shape is *valid* (for both S and D) when every bracket root satisfies
//! `y > z` and `z ≤ x` for all `x ∈ X`. B elements reuse the structure: their
//! brackets have empty `X` and are formal Hall brackets, which may violate
//! `y > z`.
//!
//! The order `≺_S` ([`Shape::cmp`]) compares vertex count, then the OSBB word
//! obtained by unrolling the bracket chain (by `≺_Δ`), then the final color.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rustc_hash::FxHasher;

use crate::color::{Alphabet, Color};
use crate::hall::GradedAtom;
use crate::osbb::{Block, OsbbWord};

/// The root of a shape.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Root {
    /// A color.
    Color(Color),
    /// A bracket `(y, z, t)`.
    Bracket(Shape, Shape, Shape),
}

struct Node {
    forest: Vec<Shape>,
    root: Root,
    vertices: usize,
    word_len: usize,
    final_color: Color,
    hash: u64,
}

/// A canonical monomial of the S / D / B bases (see the module docs).
#[derive(Clone)]
pub struct Shape(Arc<Node>);

impl Shape {
    /// Builds `Sym(forest, root)`; the forest is sorted into canonical (descending) order.
    pub fn new(mut forest: Vec<Shape>, root: Root) -> Self {
        forest.sort_by(|a, b| b.cmp(a));
        Self::from_sorted(forest, root)
    }

    fn from_sorted(forest: Vec<Shape>, root: Root) -> Self {
        let fv: usize = forest.iter().map(Shape::vertex_count).sum();
        let (vertices, word_len, final_color) = match &root {
            Root::Color(c) => (fv + 1, forest.len(), *c),
            Root::Bracket(y, z, t) => (
                fv + y.vertex_count() + z.vertex_count() + t.vertex_count(),
                forest.len() + 2 + t.word_len(),
                t.final_color(),
            ),
        };
        let mut h = FxHasher::default();
        for f in &forest {
            h.write_u64(f.0.hash);
        }
        match &root {
            Root::Color(c) => {
                h.write_u8(0);
                h.write_u16(c.0);
            }
            Root::Bracket(y, z, t) => {
                h.write_u8(1);
                h.write_u64(y.0.hash);
                h.write_u64(z.0.hash);
                h.write_u64(t.0.hash);
            }
        }
        h.write_usize(forest.len());
        Shape(Arc::new(Node { forest, root, vertices, word_len, final_color, hash: h.finish() }))
    }

    /// The color `c` (a single vertex).
    pub fn color(c: Color) -> Self {
        Self::from_sorted(Vec::new(), Root::Color(c))
    }

    /// `Sym(forest, c)`.
    pub fn sym(forest: Vec<Shape>, c: Color) -> Self {
        Self::new(forest, Root::Color(c))
    }

    /// `Sym(forest, Br(y, z, t))`.
    pub fn sym_br(forest: Vec<Shape>, y: Shape, z: Shape, t: Shape) -> Self {
        Self::new(forest, Root::Bracket(y, z, t))
    }

    /// The bare bracket `Sym((), Br(y, z, t))`.
    pub fn bracket(y: Shape, z: Shape, t: Shape) -> Self {
        Self::from_sorted(Vec::new(), Root::Bracket(y, z, t))
    }

    /// The symmetric part, sorted descending.
    pub fn forest(&self) -> &[Shape] {
        &self.0.forest
    }

    /// The root.
    pub fn root(&self) -> &Root {
        &self.0.root
    }

    /// `|x|_V`.
    pub fn vertex_count(&self) -> usize {
        self.0.vertices
    }

    /// Length of the OSBB word of the S-reading.
    pub fn word_len(&self) -> usize {
        self.0.word_len
    }

    /// The color at the end of the bracket chain (the root color of the S-reading).
    pub fn final_color(&self) -> Color {
        self.0.final_color
    }

    /// True for `Sym(X, c)`.
    pub fn is_color_rooted(&self) -> bool {
        matches!(self.0.root, Root::Color(_))
    }

    /// True for a single color vertex.
    pub fn is_color(&self) -> bool {
        self.0.forest.is_empty() && self.is_color_rooted()
    }

    /// The bracket arguments if the root is a bracket.
    pub fn bracket_args(&self) -> Option<(&Shape, &Shape, &Shape)> {
        match &self.0.root {
            Root::Bracket(y, z, t) => Some((y, z, t)),
            Root::Color(_) => None,
        }
    }

    /// True for a bare bracket `Sym((), Br(..))`.
    pub fn is_bare_bracket(&self) -> bool {
        self.0.forest.is_empty() && !self.is_color_rooted()
    }

    /// Validity as an S or D element, checked recursively.
    pub fn is_valid(&self) -> bool {
        self.forest().iter().all(Shape::is_valid)
            && match self.root() {
                Root::Color(_) => true,
                Root::Bracket(y, z, t) => {
                    y.is_valid()
                        && z.is_valid()
                        && t.is_valid()
                        && y > z
                        && self.forest().last().is_none_or(|m| z <= m)
                }
            }
    }

    /// The S-reading as an OSBB word over shapes, together with the final color.
    pub fn s_word(&self) -> (OsbbWord<Shape>, Color) {
        let mut blocks = Vec::new();
        let mut cur = self.clone();
        loop {
            let next = match cur.root() {
                Root::Color(c) => {
                    blocks.push(Block { sym: cur.forest().to_vec(), bracket: None });
                    return (OsbbWord::from_blocks(blocks).expect("chain ends in a symmetric block"), *c);
                }
                Root::Bracket(y, z, t) => {
                    blocks.push(Block { sym: cur.forest().to_vec(), bracket: Some((y.clone(), z.clone())) });
                    t.clone()
                }
            };
            cur = next;
        }
    }

    /// Inverse of [`Shape::s_word`].
    pub fn from_s_word(w: &OsbbWord<Shape>, c: Color) -> Shape {
        let blocks = w.blocks();
        let mut acc: Option<Shape> = None;
        for b in blocks.iter().rev() {
            acc = Some(match (&b.bracket, acc) {
                (None, _) => Shape::from_sorted(b.sym.clone(), Root::Color(c)),
                (Some((y, z)), Some(t)) => Shape::from_sorted(b.sym.clone(), Root::Bracket(y.clone(), z.clone(), t)),
                (Some(_), None) => unreachable!("last block has no bracket"),
            });
        }
        acc.expect("at least one block")
    }

    /// Text rendering: `c`, `s(x1, …, xn) > c`, `[y, z, t]`, `s(x1, …) > [y, z, t]`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let root = match self.root() {
            Root::Color(c) => alphabet.name(*c).to_string(),
            Root::Bracket(y, z, t) => {
                format!("[{}, {}, {}]", y.render(alphabet), z.render(alphabet), t.render(alphabet))
            }
        };
        if self.forest().is_empty() {
            return root;
        }
        let parts: Vec<String> = self.forest().iter().map(|x| x.render(alphabet)).collect();
        format!("s({}) > {}", parts.join(", "), root)
    }

    /// S-expression rendering in the expression grammar (`sym`, `tb`).
    pub fn render_sexpr(&self, alphabet: &Alphabet) -> String {
        let root = match self.root() {
            Root::Color(c) => alphabet.name(*c).to_string(),
            Root::Bracket(y, z, t) => format!(
                "(tb {} {} {})",
                y.render_sexpr(alphabet),
                z.render_sexpr(alphabet),
                t.render_sexpr(alphabet)
            ),
        };
        if self.forest().is_empty() {
            return root;
        }
        let parts: Vec<String> = self.forest().iter().map(|x| x.render_sexpr(alphabet)).collect();
        format!("(sym {} {})", parts.join(" "), root)
    }

    /// LaTeX rendering: forests as `\{x_1, …\} \rhd c`, brackets as `[y, z, t]`.
    pub fn render_latex(&self, alphabet: &Alphabet) -> String {
        let root = match self.root() {
            Root::Color(c) => format!("\\mathtt{{{}}}", alphabet.name(*c)),
            Root::Bracket(y, z, t) => format!(
                "[{}, {}, {}]",
                y.render_latex(alphabet),
                z.render_latex(alphabet),
                t.render_latex(alphabet)
            ),
        };
        if self.forest().is_empty() {
            return root;
        }
        let parts: Vec<String> = self.forest().iter().map(|x| x.render_latex(alphabet)).collect();
        format!("\\mathfrak{{s}}({}) \\rhd {}", parts.join(", "), root)
    }
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.0.hash == other.0.hash
            && self.0.vertices == other.0.vertices
            && self.0.forest == other.0.forest
            && self.0.root == other.0.root
    }
}

impl Eq for Shape {}

impl Hash for Shape {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Block comparison of `≺_Δ` specialized to shape chains (no allocation).
fn cmp_block(xa: &[Shape], ba: Option<(&Shape, &Shape)>, xb: &[Shape], bb: Option<(&Shape, &Shape)>) -> Ordering {
    match (ba, bb) {
        (None, None) => xa.len().cmp(&xb.len()).then_with(|| xa.cmp(xb)),
        (Some((u, v)), Some((w, z))) => xa
            .len()
            .cmp(&xb.len())
            .then_with(|| v.cmp(z))
            .then_with(|| u.cmp(w))
            .then_with(|| xa.cmp(xb)),
        (Some(_), None) => {
            if xa.len() + 2 > xb.len() {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        }
        (None, Some(_)) => {
            if xb.len() + 2 > xa.len() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

fn cmp_chain(a: &Shape, b: &Shape) -> Ordering {
    let (ba, ta) = match a.root() {
        Root::Bracket(y, z, t) => (Some((y, z)), Some(t)),
        Root::Color(_) => (None, None),
    };
    let (bb, tb) = match b.root() {
        Root::Bracket(y, z, t) => (Some((y, z)), Some(t)),
        Root::Color(_) => (None, None),
    };
    cmp_block(a.forest(), ba, b.forest(), bb).then_with(|| match (ta, tb) {
        (Some(x), Some(y)) => cmp_chain(x, y),
        _ => Ordering::Equal,
    })
}

impl Ord for Shape {
    /// The order `≺_S`: vertex count, then `≺_Δ` on the S-reading's OSBB word, then the color.
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .vertices
            .cmp(&other.0.vertices)
            .then_with(|| self.0.word_len.cmp(&other.0.word_len))
            .then_with(|| cmp_chain(self, other))
            .then_with(|| self.0.final_color.cmp(&other.0.final_color))
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GradedAtom for Shape {
    fn grade(&self) -> usize {
        self.vertex_count()
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 1 + max_color(self);
        write!(f, "{}", self.render(&Alphabet::standard(n)))
    }
}

fn max_color(s: &Shape) -> usize {
    let own = match s.root() {
        Root::Color(c) => c.index(),
        Root::Bracket(y, z, t) => max_color(y).max(max_color(z)).max(max_color(t)),
    };
    s.forest().iter().map(max_color).fold(own, usize::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Shape {
        Shape::color(Color(0))
    }
    fn b() -> Shape {
        Shape::color(Color(1))
    }

    #[test]
    fn vertex_counts() {
        let aa = Shape::sym(vec![a()], Color(0));
        assert_eq!(aa.vertex_count(), 2);
        let br = Shape::bracket(aa.clone(), a(), a());
        assert_eq!(br.vertex_count(), 4);
        assert_eq!(Shape::sym(vec![br.clone()], Color(0)).vertex_count(), 5);
        assert!(br.is_valid());
        assert!(!Shape::bracket(a(), aa, a()).is_valid());
    }

    #[test]
    fn order_basics() {
        assert!(a() < b());
        let aa = Shape::sym(vec![a()], Color(0));
        assert!(b() < aa);
        assert_eq!(aa.cmp(&aa.clone()), Ordering::Equal);
        // Sym words beat bracket words of equal length
        let s3 = Shape::sym(vec![a(), a()], Color(0));
        let t3 = Shape::sym(vec![aa.clone()], Color(0));
        assert!(s3 != t3);
        assert_eq!(s3.cmp(&t3), t3.cmp(&s3).reverse());
    }

    #[test]
    fn s_word_round_trip() {
        let aa = Shape::sym(vec![a()], Color(0));
        let s = Shape::sym_br(vec![aa.clone()], aa.clone(), a(), Shape::sym(vec![b()], Color(1)));
        let (w, c) = s.s_word();
        assert_eq!(Shape::from_s_word(&w, c), s);
        assert_eq!(w.len(), s.word_len());
    }
}
