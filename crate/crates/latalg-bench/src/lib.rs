//! Benchmark fixtures shared by the criterion targets in `benches/`.

use latalg::tree::enumerate_trees;
use latalg::{Color, PlanarTree};

/// Every planar tree with `grade` vertices over `n_colors` colors, in the
/// enumeration order.
pub fn trees(n_colors: usize, grade: usize) -> Vec<PlanarTree> {
    enumerate_trees(n_colors, grade)
}

/// A fixed word of length `len` cycling through `n_colors` colors in reverse,
/// which is far from OSBB normal form.
pub fn reversed_word(n_colors: usize, len: usize) -> Vec<Color> {
    (0..len).map(|i| Color((n_colors - 1 - i % n_colors) as u16)).collect()
}
