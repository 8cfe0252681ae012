//! Shared inputs for the criterion benches.

use cmvscat::scatter::forward_scatter;
use cmvscat::{CircleFunction, CircleGrid, VerblunskySeq};

/// `a = (1/2, 1/3, −1/4)` with `a₋₁ = −1`.
pub fn three_term() -> VerblunskySeq {
    VerblunskySeq::real(&[0.5, 1.0 / 3.0, -0.25]).expect("valid sequence")
}

pub fn grid(n: usize) -> CircleGrid {
    CircleGrid::new(n).expect("power-of-two grid")
}

/// Scattering function of [`three_term`] on `n` nodes.
pub fn three_term_symbol(n: usize) -> CircleFunction {
    forward_scatter(&three_term(), grid(n))
        .expect("forward map")
        .s
}
