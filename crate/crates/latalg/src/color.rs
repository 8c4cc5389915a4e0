//! Colors (generators) and the declared alphabet.

use std::fmt;

use crate::error::AlgebraError;

/// A generator of the free algebra: a dense index into the declared alphabet.
///
/// The total order on colors is the index order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub u16);

impl Color {
    /// The index of the color inside its alphabet.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", default_name(self.index()))
    }
}

/// Default display names `a, b, c, …, z, c26, c27, …`.
pub fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("c{i}")
    }
}

/// A finite alphabet with names; order is declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from names in the desired order.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        if names.is_empty() {
            return Err(AlgebraError::InvalidAlphabet("no colors declared".into()));
        }
        if names.len() > u16::MAX as usize {
            return Err(AlgebraError::InvalidAlphabet("too many colors".into()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            let valid = !n.is_empty()
                && n.chars().next().is_some_and(|c| c.is_alphabetic())
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::InvalidAlphabet(format!("invalid color name `{n}`")));
            }
            if out.iter().any(|m| m == n) {
                return Err(AlgebraError::InvalidAlphabet(format!("repeated color `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(Alphabet { names: out })
    }

    /// The first `n` default names `a, b, …`.
    pub fn standard(n: usize) -> Self {
        Alphabet { names: (0..n).map(default_name).collect() }
    }

    /// Number of colors.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false for a valid alphabet.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All colors in order.
    pub fn colors(&self) -> Vec<Color> {
        (0..self.names.len()).map(|i| Color(i as u16)).collect()
    }

    /// The display name of a color.
    pub fn name(&self, c: Color) -> &str {
        &self.names[c.index()]
    }

    /// All names in order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves a name.
    pub fn lookup(&self, name: &str) -> Result<Color, AlgebraError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Color(i as u16))
            .ok_or_else(|| AlgebraError::UnknownColor(name.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_declaration_order() {
        let a = Alphabet::new(&["x", "y"]).unwrap();
        assert!(a.lookup("x").unwrap() < a.lookup("y").unwrap());
        assert!(a.lookup("z").is_err());
        assert!(Alphabet::new(&["x", "x"]).is_err());
        assert!(Alphabet::new::<&str>(&[]).is_err());
    }
}
