//! Exact symbolic kernel for the free Lie admissible triple (LAT) algebra.
//!
//! The crate is layered bottom-up:
//!
//! * [`rational`], [`lincomb`], [`color`] — exact coefficients, formal linear
//!   combinations and the ordered alphabet;
//! * [`tree`], [`dalg`] — planar trees, left grafting and the word-level
//!   D-algebra operations (symmetrization, Leibniz action, triple bracket);
//! * [`osbb`] — the ordered symmetric-bracket-block basis of the tensor algebra;
//! * [`hall`] — Hall triple sets and the Hall rewriting map for free Lie
//!   triple systems over any graded ordered alphabet;
//! * [`lat`] — the tree bases S, D and B, the automorphism ψ and the normal
//!   form projection φ onto the free LAT algebra;
//! * [`prelie`], [`postlie`] — the free pre-Lie quotient and the post-Lie
//!   embedding `Der(A) ⊕ A`.

pub mod color;
pub mod dalg;
pub mod error;
pub mod hall;
pub mod lat;
pub mod linalg;
pub mod lincomb;
pub mod osbb;
pub mod postlie;
pub mod prelie;
pub mod rational;
pub mod tree;

pub use color::{Alphabet, Color};
pub use error::AlgebraError;
pub use lincomb::LinComb;
pub use rational::Rational;
pub use tree::PlanarTree;
