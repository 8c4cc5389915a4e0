//! The tree bases S, D and B of the free algebra, the change of basis ψ, and
//! the LAT normal form `φ = π_H ∘ π_D`.
//!
//! All three bases share the monomial type [`Shape`]; see [`shape`] for how
//! each basis reads it. A [`LatEngine`] owns the memo tables of every
//! recursive computation and is meant to be created once and reused.

mod bbasis;
mod dengine;
mod phi;
mod sbasis;
pub mod shape;

use std::cell::RefCell;

use rustc_hash::FxHashMap;

use crate::hall::HallRewriter;
use crate::lincomb::LinComb;
use crate::osbb::{OsbbRewriter, OsbbWord};
use crate::tree::{PlanarTree, TreeComb};

pub use bbasis::{b_to_tern, lat1_instance, lat2_instance, quotient_dimension, tern_to_b};
pub use shape::{Root, Shape};

/// A combination of shapes (read in S, D or B coordinates depending on context).
pub type DComb = LinComb<Shape>;

type PairKey = (Vec<Shape>, Shape, Shape, Shape);

/// Memoized computations over the S, D and B bases.
#[derive(Default)]
pub struct LatEngine {
    n_colors: usize,
    osbb: OsbbRewriter<Shape>,
    hall: HallRewriter<Shape>,
    graft_sym_memo: RefCell<FxHashMap<(Vec<Shape>, Shape), DComb>>,
    graft_pair_memo: RefCell<FxHashMap<PairKey, DComb>>,
    onto_memo: RefCell<FxHashMap<(OsbbWord<Shape>, Root), DComb>>,
    tree_d_memo: RefCell<FxHashMap<PlanarTree, DComb>>,
    tree_s_memo: RefCell<FxHashMap<PlanarTree, DComb>>,
    expand_s_memo: RefCell<FxHashMap<Shape, TreeComb>>,
    expand_d_memo: RefCell<FxHashMap<Shape, TreeComb>>,
    pi_d_memo: RefCell<FxHashMap<Shape, DComb>>,
    pi_h_memo: RefCell<FxHashMap<Shape, DComb>>,
    shapes_memo: RefCell<Vec<Vec<Shape>>>,
    b_memo: RefCell<Option<crate::hall::HallLayers<Shape>>>,
}

impl LatEngine {
    /// An engine over an alphabet of `n_colors` colors.
    pub fn new(n_colors: usize) -> Self {
        LatEngine { n_colors, ..Default::default() }
    }

    /// Number of colors.
    pub fn n_colors(&self) -> usize {
        self.n_colors
    }
}
