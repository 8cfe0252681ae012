//! Forward and inverse scattering for CMV matrices.
//!
//! The pipeline runs in both directions:
//!
//! - **forward**: Verblunsky coefficients `(a₋₁, a₀, a₁, …)` → spectral density
//!   `w` (Schur/Bernstein–Szegő) → Szegő function `D` → scattering function
//!   `s = −a₋₁·D/D_*`.
//! - **inverse**: `s` → truncated Hankel operator `H_s` → point-evaluation
//!   kernels of shifted symbols `s·tⁿ` → `conj(a_n)` and `ρ_n`, plus `a₋₁`.
//!
//! Around the two maps sit the regularity diagnostics (AAK limit, Helson–Szegő
//! / A₂, Golinskii–Ibragimov), the GLM triangular factorizations and the Widom
//! determinant identity.
//!
//! # Conventions
//!
//! Fourier coefficients are `ĝ(k) = ∫ g t^{−k} dm`, sampled on the `N`-th
//! roots of unity. The CMV matrix is `𝔄 = 𝔄₁𝔄₀` with blocks
//! `[[a_k, ρ_k], [ρ_k, −conj(a_k)]]` and leading entry `−conj(a₋₁)`. With that
//! matrix, the spectral measure of `e₀` has Verblunsky (Schur) parameters
//! `γ_n = −a₋₁·conj(a_n)`. Hence `R'(0) = −2a₋₁·conj(a₀)`, and the measure
//! depends on `a₋₁` only through the products `a₋₁·conj(a_n)`.

pub mod circle;
pub mod classify;
pub mod error;
pub mod hankel;
pub mod inverse;
mod linalg;
pub mod opuc;
pub mod scatter;

pub use num_complex::Complex64;

pub use circle::{CircleFunction, CircleGrid, Coefficients, DiskFunction, Side};
pub use classify::{ClassReport, ClassifyInput, WidomRow};
pub use error::{Error, Result};
pub use hankel::{AakData, HankelOp, RegularityReport, Rhs};
pub use inverse::{GlmMatrix, LMatrix, RecoveryReport};
pub use opuc::{CmvMatrix, LaurentBasis, VerblunskySeq};
pub use scatter::{KernelPair, PhiPsi, ScatteringData};

/// Default number of grid nodes on the unit circle.
pub const DEFAULT_GRID: usize = 4096;
/// Default Hankel truncation order.
pub const DEFAULT_TRUNCATION: usize = 256;
