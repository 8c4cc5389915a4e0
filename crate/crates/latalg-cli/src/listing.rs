//! Graded basis listings and dimension tables.

use std::fmt::Write as _;

use clap::ValueEnum;
use latalg::hall::{hall_generate, Tern};
use latalg::lat::{LatEngine, Shape};
use latalg::osbb::{self, Block, OsbbWord};
use latalg::prelie::{enumerate_nonplanar, NonPlanarTree};
use latalg::tree::enumerate_trees;
use latalg::{Alphabet, Color, PlanarTree};
use serde_json::json;

/// The enumerable bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// The LAT basis B.
    B,
    /// The S basis of the free D-algebra.
    S,
    /// The D basis of the free D-algebra.
    D,
    /// Hall triple sets over the colors.
    Hall,
    /// OSBB words over the colors (grade = word length).
    Osbb,
    /// Planar rooted trees.
    Tree,
    /// Non-planar rooted trees.
    Nonplanar,
}

impl Which {
    /// The name used on the command line and in files.
    pub fn name(self) -> &'static str {
        match self {
            Which::B => "b",
            Which::S => "s",
            Which::D => "d",
            Which::Hall => "hall",
            Which::Osbb => "osbb",
            Which::Tree => "tree",
            Which::Nonplanar => "nonplanar",
        }
    }

    /// Inverse of [`Which::name`].
    pub fn from_name(s: &str) -> Option<Self> {
        Which::value_variants().iter().copied().find(|w| w.name() == s)
    }

    /// The ordering used inside each grade.
    pub fn order(self) -> &'static str {
        match self {
            Which::B => "hall-order-over-symmetrized-trees",
            Which::S | Which::D => "s-order",
            Which::Hall => "hall-order",
            Which::Osbb => "delta-order",
            Which::Tree | Which::Nonplanar => "vertex-count-then-preorder",
        }
    }
}

/// Output styles for element renderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Plain text (`s(x, y) > c`, `[x, y, z]`, `c(b1, b2)`).
    Text,
    /// LaTeX math.
    Latex,
}

/// A rendered graded listing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Listing {
    /// Which basis.
    pub which: Which,
    /// The alphabet, in order.
    pub alphabet: Vec<String>,
    /// Rendered elements of grades `1..=grades.len()`.
    pub grades: Vec<Vec<String>>,
}

fn latex_color(al: &Alphabet, c: Color) -> String {
    format!("\\mathtt{{{}}}", al.name(c))
}

fn render_shape(x: &Shape, al: &Alphabet, style: Style) -> String {
    match style {
        Style::Text => x.render(al),
        Style::Latex => x.render_latex(al),
    }
}

fn render_tern(m: &Tern<Color>, al: &Alphabet, style: Style) -> String {
    match style {
        Style::Text => m.render_with(&|c| al.name(*c).to_string()),
        Style::Latex => m.render_with(&|c| latex_color(al, *c)),
    }
}

fn render_tree(t: &PlanarTree, al: &Alphabet, style: Style) -> String {
    match style {
        Style::Text => t.render(al),
        Style::Latex => nested_latex(latex_color(al, t.root_color()), t.branches().iter().map(|b| render_tree(b, al, style))),
    }
}

fn render_nonplanar(t: &NonPlanarTree, al: &Alphabet, style: Style) -> String {
    match style {
        Style::Text => t.render(al),
        Style::Latex => nested_latex(latex_color(al, t.root_color()), t.branches().iter().map(|b| render_nonplanar(b, al, style))),
    }
}

fn nested_latex(root: String, branches: impl Iterator<Item = String>) -> String {
    let bs: Vec<String> = branches.collect();
    if bs.is_empty() {
        root
    } else {
        format!("{root}\\langle {} \\rangle", bs.join(", "))
    }
}

/// Renders an OSBB word: blocks `s(x, …)[y, z]` joined by `·`.
pub fn render_osbb(w: &OsbbWord<Color>, al: &Alphabet, style: Style) -> String {
    let name = |c: &Color| match style {
        Style::Text => al.name(*c).to_string(),
        Style::Latex => latex_color(al, *c),
    };
    let block = |b: &Block<Color>| {
        let mut s = String::new();
        if !b.sym.is_empty() || b.bracket.is_none() {
            let xs: Vec<String> = b.sym.iter().map(name).collect();
            match style {
                Style::Text => write!(s, "s({})", xs.join(", ")).unwrap(),
                Style::Latex => write!(s, "\\mathfrak{{s}}({})", xs.join(", ")).unwrap(),
            }
        }
        if let Some((y, z)) = &b.bracket {
            write!(s, "[{}, {}]", name(y), name(z)).unwrap();
        }
        s
    };
    let sep = match style {
        Style::Text => "·",
        Style::Latex => " \\cdot ",
    };
    let blocks = w.blocks();
    // a trailing empty symmetric block is the unit and is only shown on its own
    let shown = match blocks.split_last() {
        Some((last, init)) if last.sym.is_empty() && !init.is_empty() => init,
        _ => blocks,
    };
    shown.iter().map(block).collect::<Vec<_>>().join(sep)
}

/// Enumerates one graded basis through `max_grade` and renders every element.
pub fn build(which: Which, al: &Alphabet, max_grade: usize, style: Style) -> Listing {
    let n = al.len();
    let grades: Vec<Vec<String>> = match which {
        Which::B => {
            let e = LatEngine::new(n);
            (1..=max_grade).map(|g| e.b_of_grade(g).iter().map(|x| render_shape(x, al, style)).collect()).collect()
        }
        Which::S | Which::D => {
            let e = LatEngine::new(n);
            (1..=max_grade).map(|g| e.shapes_of_grade(g).iter().map(|x| render_shape(x, al, style)).collect()).collect()
        }
        Which::Hall => {
            let all = hall_generate(n, max_grade);
            (1..=max_grade)
                .map(|g| all.iter().filter(|m| m.grade() == g).map(|m| render_tern(m, al, style)).collect())
                .collect()
        }
        Which::Osbb => {
            let atoms = al.colors();
            (1..=max_grade).map(|k| osbb::enumerate(&atoms, k).iter().map(|w| render_osbb(w, al, style)).collect()).collect()
        }
        Which::Tree => (1..=max_grade).map(|g| enumerate_trees(n, g).iter().map(|t| render_tree(t, al, style)).collect()).collect(),
        Which::Nonplanar => (1..=max_grade)
            .map(|g| enumerate_nonplanar(n, g).iter().map(|t| render_nonplanar(t, al, style)).collect())
            .collect(),
    };
    Listing { which, alphabet: al.names().to_vec(), grades }
}

/// Per-grade counts of one basis, grades `1..=max_grade`.
pub fn dimensions(which: Which, al: &Alphabet, max_grade: usize) -> Vec<usize> {
    let n = al.len();
    match which {
        Which::B => {
            let e = LatEngine::new(n);
            (1..=max_grade).map(|g| e.lat_dimension(g)).collect()
        }
        Which::S | Which::D => {
            let e = LatEngine::new(n);
            (1..=max_grade).map(|g| e.shapes_of_grade(g).len()).collect()
        }
        Which::Hall => {
            let all = hall_generate(n, max_grade);
            (1..=max_grade).map(|g| all.iter().filter(|m| m.grade() == g).count()).collect()
        }
        Which::Osbb => (1..=max_grade).map(|k| osbb::enumerate(&al.colors(), k).len()).collect(),
        Which::Tree => (1..=max_grade).map(|g| enumerate_trees(n, g).len()).collect(),
        Which::Nonplanar => (1..=max_grade).map(|g| enumerate_nonplanar(n, g).len()).collect(),
    }
}

impl Listing {
    /// Total number of elements.
    pub fn total(&self) -> usize {
        self.grades.iter().map(Vec::len).sum()
    }

    fn header(&self) -> String {
        format!("basis {} over {{{}}}, grades 1..{}", self.which.name(), self.alphabet.join(", "), self.grades.len())
    }

    /// Plain text: a header, then each grade with its elements, then the total.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {}\n", self.header());
        for (i, g) in self.grades.iter().enumerate() {
            writeln!(s, "grade {} ({})", i + 1, g.len()).unwrap();
            for x in g {
                writeln!(s, "  {x}").unwrap();
            }
        }
        writeln!(s, "total {}", self.total()).unwrap();
        s
    }

    /// JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let grades: Vec<serde_json::Value> = self
            .grades
            .iter()
            .enumerate()
            .map(|(i, g)| json!({ "grade": i + 1, "count": g.len(), "elements": g }))
            .collect();
        let v = json!({
            "which": self.which.name(),
            "alphabet": self.alphabet,
            "max_grade": self.grades.len(),
            "grades": grades,
            "total": self.total(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }

    /// A LaTeX fragment, one display line per element.
    pub fn to_latex(&self) -> String {
        let mut s = format!("% {}\n", self.header());
        for (i, g) in self.grades.iter().enumerate() {
            writeln!(s, "\\paragraph{{Grade {} ({})}}", i + 1, g.len()).unwrap();
            for x in g {
                writeln!(s, "${x}$\\\\").unwrap();
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listings_match_known_examples() {
        let b = build(Which::B, &Alphabet::standard(1), 4, Style::Text);
        assert_eq!(b.total(), 9);
        assert!(b.grades[3].contains(&"[s(a) > a, a, a]".to_string()), "{:?}", b.grades[3]);
        let h = build(Which::Hall, &Alphabet::standard(2), 3, Style::Text);
        let all: Vec<&String> = h.grades.iter().flatten().collect();
        assert_eq!(all, vec!["a", "b", "[b, a, a]", "[b, a, b]"]);
        let o = build(Which::Osbb, &Alphabet::standard(2), 3, Style::Text);
        assert_eq!(o.grades[2].len(), 8);
    }

    #[test]
    fn dimensions_agree_with_listings() {
        let al = Alphabet::standard(2);
        for w in Which::value_variants() {
            let l = build(*w, &al, 4, Style::Text);
            let counts: Vec<usize> = l.grades.iter().map(Vec::len).collect();
            assert_eq!(counts, dimensions(*w, &al, 4), "{w:?}");
            assert_eq!(Which::from_name(w.name()), Some(*w));
        }
    }

    #[test]
    fn latex_rendering_uses_nested_lists_and_brackets() {
        let t = build(Which::Tree, &Alphabet::standard(1), 3, Style::Latex);
        assert!(t.grades[2].iter().any(|x| x == "\\mathtt{a}\\langle \\mathtt{a}, \\mathtt{a} \\rangle"), "{:?}", t.grades[2]);
        let h = build(Which::Hall, &Alphabet::standard(2), 3, Style::Latex);
        assert_eq!(h.grades[2][0], "[\\mathtt{b}, \\mathtt{a}, \\mathtt{a}]");
    }
}
