//! Verblunsky sequences, CMV matrices and the Bernstein–Szegő oracle.
//!
//! The CMV matrix `𝔄 = 𝔄₁𝔄₀` carries the blocks `A_k = [[a_k, ρ_k], [ρ_k, −ā_k]]`
//! (even `k` in `𝔄₀`, odd `k` in `𝔄₁`) and the corner entry `−ā₋₁`. Its
//! spectral measure at `e₀` has Schur parameters `γ_n = −a₋₁·ā_n`; see
//! [`VerblunskySeq::measure_parameters`].

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{herglotz_from_density, CircleFunction, CircleGrid, DiskFunction};
use crate::error::{Error, Result};

const UNIMODULAR_TOL: f64 = 1e-12;
const DISK_MARGIN: f64 = 1e-12;

/// Finitely supported Verblunsky data `(a₋₁; a₀, …, a_{M−1})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeq", into = "RawSeq")]
pub struct VerblunskySeq {
    a_minus1: Complex64,
    a: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawSeq {
    a_minus1: Complex64,
    a: Vec<Complex64>,
}

impl TryFrom<RawSeq> for VerblunskySeq {
    type Error = Error;
    fn try_from(raw: RawSeq) -> Result<Self> {
        VerblunskySeq::new(raw.a_minus1, raw.a)
    }
}

impl From<VerblunskySeq> for RawSeq {
    fn from(seq: VerblunskySeq) -> Self {
        RawSeq {
            a_minus1: seq.a_minus1,
            a: seq.a,
        }
    }
}

impl VerblunskySeq {
    pub fn new(a_minus1: Complex64, a: Vec<Complex64>) -> Result<Self> {
        if !a_minus1.re.is_finite() || !a_minus1.im.is_finite() {
            return Err(Error::domain("a_minus1 is not finite"));
        }
        if (a_minus1.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::domain(format!(
                "|a_minus1| must be 1, got {}",
                a_minus1.norm()
            )));
        }
        for (k, ak) in a.iter().enumerate() {
            if !(ak.norm() <= 1.0 - DISK_MARGIN) {
                return Err(Error::domain(format!(
                    "|a_{k}| = {} is not inside the unit disk",
                    ak.norm()
                )));
            }
        }
        Ok(Self { a_minus1, a })
    }

    /// Real coefficients with `a₋₁ = −1`.
    pub fn real(a: &[f64]) -> Result<Self> {
        Self::new(
            Complex64::new(-1.0, 0.0),
            a.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn free(a_minus1: Complex64) -> Result<Self> {
        Self::new(a_minus1, Vec::new())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence serializes")
    }

    pub fn a_minus1(&self) -> Complex64 {
        self.a_minus1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.a
    }

    /// `a_k`, zero past the support.
    pub fn get(&self, k: usize) -> Complex64 {
        self.a.get(k).copied().unwrap_or_default()
    }

    pub fn rho(&self, k: usize) -> f64 {
        (1.0 - self.get(k).norm_sqr()).sqrt()
    }

    /// Length of the stored list (trailing zeros included).
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// One past the last nonzero coefficient.
    pub fn support(&self) -> usize {
        self.a
            .iter()
            .rposition(|z| *z != Complex64::new(0.0, 0.0))
            .map_or(0, |i| i + 1)
    }

    pub fn with_a_minus1(&self, a_minus1: Complex64) -> Result<Self> {
        Self::new(a_minus1, self.a.clone())
    }

    /// Schur parameters of the spectral measure, `γ_n = −a₋₁·ā_n`.
    pub fn measure_parameters(&self) -> Vec<Complex64> {
        self.a.iter().map(|ak| -self.a_minus1 * ak.conj()).collect()
    }

    /// `Σ |a_k|²`.
    pub fn szego_sum(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Π_{k<n} ρ_k`.
    pub fn rho_product(&self, n: usize) -> f64 {
        (0..n).map(|k| self.rho(k)).product()
    }

    /// `Π_k ρ_k^{2(k+1)}`.
    pub fn widom_product(&self) -> f64 {
        (0..self.a.len())
            .map(|k| self.rho(k).powi(2 * (k as i32 + 1)))
            .product()
    }
}

/// `a_n = −(γ₁ − (−1)ⁿγ₂)/(n + 1 + γ₁ + γ₂)`, `n < len`, with `a₋₁ = −1`.
/// Its weight behaves like `|1 − t|^{2γ₁}|1 + t|^{2γ₂}`.
pub fn jacobi_sequence(gamma1: f64, gamma2: f64, len: usize) -> Result<VerblunskySeq> {
    let a: Vec<f64> = (0..len)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            -(gamma1 - sign * gamma2) / (n as f64 + 1.0 + gamma1 + gamma2)
        })
        .collect();
    VerblunskySeq::real(&a)
}

/// Leading `n×n` truncation of the CMV matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CmvMatrix {
    matrix: DMatrix<Complex64>,
}

impl CmvMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `max |(𝔄*𝔄 − I)_{ij}|` over columns at least two away from the edge.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim().saturating_sub(2);
        let cols = self.matrix.columns(0, n);
        let gram = cols.adjoint() * cols;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - target).norm());
            }
        }
        worst
    }
}

fn place_block(m: &mut DMatrix<Complex64>, k: usize, ak: Complex64, rho: f64) {
    let n = m.nrows();
    let r = Complex64::new(rho, 0.0);
    m[(k, k)] = ak;
    if k + 1 < n {
        m[(k, k + 1)] = r;
        m[(k + 1, k)] = r;
        m[(k + 1, k + 1)] = -ak.conj();
    }
}

fn cmv_factors(seq: &VerblunskySeq, n: usize) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let mut even = DMatrix::zeros(n, n);
    let mut odd = DMatrix::zeros(n, n);
    for k in (0..n).step_by(2) {
        place_block(&mut even, k, seq.get(k), seq.rho(k));
    }
    odd[(0, 0)] = -seq.a_minus1().conj();
    for k in (1..n).step_by(2) {
        place_block(&mut odd, k, seq.get(k), seq.rho(k));
    }
    (odd, even)
}

pub fn build_cmv(seq: &VerblunskySeq, n: usize) -> Result<CmvMatrix> {
    if n < 2 {
        return Err(Error::arg("CMV truncation needs n >= 2"));
    }
    let (odd, even) = cmv_factors(seq, n + 2);
    let full = odd * even;
    Ok(CmvMatrix {
        matrix: full.view((0, 0), (n, n)).into_owned(),
    })
}

/// Max residual of the two three-term identities linking `𝔄^{±1}` and the
/// standard basis, over all `n` whose vectors stay clear of the truncation edge.
pub fn cmv_recursion_check(seq: &VerblunskySeq, n: usize) -> Result<f64> {
    let need = 2 * seq.support() + 4;
    if n < need.max(4) {
        return Err(Error::arg(format!(
            "dimension {n} too small, need at least {}",
            need.max(4)
        )));
    }
    let cmv = build_cmv(seq, n)?;
    let a = cmv.matrix();
    let a_inv = a.adjoint();
    let e = |i: usize| {
        let mut v = nalgebra::DVector::zeros(n);
        v[i] = Complex64::new(1.0, 0.0);
        v
    };
    let coef = |k: isize| {
        if k < 0 {
            seq.a_minus1()
        } else {
            seq.get(k as usize)
        }
    };
    let rho = |k: isize| {
        if k < 0 {
            0.0
        } else {
            seq.rho(k as usize)
        }
    };
    let mut worst = 0.0f64;
    let mut m = 0usize;
    while 2 * m + 4 < n {
        let k = 2 * m as isize;
        let mut lhs = e(2 * m) * (-coef(k - 1).conj());
        if m > 0 {
            lhs += e(2 * m - 1) * Complex64::new(rho(k - 1), 0.0);
        }
        let rhs = e(2 * m) * coef(k).conj() + e(2 * m + 1) * Complex64::new(rho(k), 0.0);
        worst = worst.max((&a_inv * lhs - rhs).camax());

        let lhs = e(2 * m) * Complex64::new(rho(k), 0.0) - e(2 * m + 1) * coef(k);
        let rhs = e(2 * m + 1) * coef(k + 1) + e(2 * m + 2) * Complex64::new(rho(k + 1), 0.0);
        worst = worst.max((a * lhs - rhs).camax());
        m += 1;
    }
    Ok(worst)
}

/// Boundary values of `φ(t) = t·f(t)`, where `f` is the Schur function with
/// parameters `ā_n`. The Carathéodory function is `R = (1 − a₋₁φ)/(1 + a₋₁φ)`.
pub fn schur_phi(seq: &VerblunskySeq, grid: CircleGrid) -> CircleFunction {
    CircleFunction::from_fn(grid, |t| t * schur_function(seq.coefficients(), t, true))
}

/// Backward Schur recursion `f_M = 0`, `f_k = (c_k + z f_{k+1})/(1 + c̄_k z f_{k+1})`
/// with `c_k = a_k` or `ā_k`.
fn schur_function(a: &[Complex64], z: Complex64, conjugate: bool) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |f, &ak| {
        let c = if conjugate { ak.conj() } else { ak };
        let zf = z * f;
        (c + zf) / (1.0 + c.conj() * zf)
    })
}

/// `R` at a point of the closed disk.
pub fn caratheodory_at(seq: &VerblunskySeq, z: Complex64) -> Complex64 {
    let phi = z * schur_function(seq.coefficients(), z, true);
    let x = seq.a_minus1() * phi;
    (1.0 - x) / (1.0 + x)
}

/// Boundary values of the Carathéodory function of the spectral measure.
pub fn caratheodory_boundary(seq: &VerblunskySeq, grid: CircleGrid) -> CircleFunction {
    CircleFunction::from_fn(grid, |t| caratheodory_at(seq, t))
}

/// `R(z) = ∫ (t+z)/(t−z) dσ` as a Taylor series, `R(0) = 1`.
pub fn schur_caratheodory(seq: &VerblunskySeq, grid: CircleGrid) -> DiskFunction {
    let boundary = caratheodory_boundary(seq, grid);
    let mut r = DiskFunction::from_boundary(&boundary, crate::circle::Side::Interior);
    r.set_leading(Complex64::new(1.0, 0.0));
    r
}

/// Density `w = Re R` of the (purely absolutely continuous) spectral measure.
pub fn spectral_density(seq: &VerblunskySeq, grid: CircleGrid) -> CircleFunction {
    caratheodory_boundary(seq, grid).map(|z| Complex64::new(z.re, 0.0))
}

/// Laurent polynomial `Σ c_p t^p` with `p ∈ [−K, K]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    reach: usize,
    coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    fn zero(reach: usize) -> Self {
        Self {
            reach,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * reach + 1],
        }
    }

    /// Coefficient of `t^p`.
    pub fn coeff(&self, p: i64) -> Complex64 {
        let idx = p + self.reach as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[idx as usize]
    }

    fn add_shifted(&mut self, other: &LaurentPoly, c: Complex64, shift: i64) {
        for (i, &v) in other.coeffs.iter().enumerate() {
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let j = i as i64 + shift;
            self.coeffs[j as usize] += c * v;
        }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let tinv = t.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let p = i as i64 - self.reach as i64;
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            acc += c * if p >= 0 {
                t.powu(p as u32)
            } else {
                tinv.powu((-p) as u32)
            };
        }
        acc
    }
}

/// CMV-ordered orthonormal Laurent polynomials `P_0, …, P_{m−1}` under `w dm`.
#[derive(Clone, Debug)]
pub struct LaurentBasis {
    pub polys: Vec<LaurentPoly>,
    pub values: Vec<CircleFunction>,
    /// Coefficient of `t^n` in `P_{2n}` and of `t^{−(n+1)}` in `P_{2n+1}`.
    pub leading: Vec<Complex64>,
    /// `max |∫ P_n P̄_m w dm − δ_{nm}|`.
    pub gram_residual: f64,
}

/// Power carrying the leading coefficient of `P_n`.
pub fn leading_power(n: usize) -> i64 {
    if n % 2 == 0 {
        (n / 2) as i64
    } else {
        -(n.div_ceil(2) as i64)
    }
}

/// Leading coefficients predicted from the `ρ` products:
/// `1/(ρ₀⋯ρ_{2n−1})` and `−ā₋₁/(ρ₀⋯ρ_{2n})`.
pub fn predicted_leading(seq: &VerblunskySeq, n: usize) -> Complex64 {
    let prod = seq.rho_product(n);
    if n % 2 == 0 {
        Complex64::new(1.0 / prod, 0.0)
    } else {
        -seq.a_minus1().conj() / prod
    }
}

/// Gram matrix `G_{nm} = ∫ P_n P̄_m w dm` on the grid.
pub fn gram_matrix(values: &[CircleFunction], w: &CircleFunction) -> DMatrix<Complex64> {
    let m = values.len();
    let n = w.len() as f64;
    DMatrix::from_fn(m, m, |i, j| {
        values[i]
            .samples()
            .iter()
            .zip(values[j].samples())
            .zip(w.samples())
            .map(|((p, q), wt)| p * q.conj() * wt.re)
            .sum::<Complex64>()
            / n
    })
}

pub fn laurent_basis(seq: &VerblunskySeq, m: usize, w: &CircleFunction) -> Result<LaurentBasis> {
    let grid = w.grid();
    if m == 0 || m > grid.size() / 4 {
        return Err(Error::arg(format!(
            "basis size {m} must be in 1..={}",
            grid.size() / 4
        )));
    }
    let reach = m / 2 + 1;
    let cst = |x: f64| Complex64::new(x, 0.0);
    let a = |k: usize| seq.get(k);
    let rho = |k: usize| seq.rho(k);

    let mut polys = Vec::with_capacity(m);
    let mut p0 = LaurentPoly::zero(reach);
    p0.coeffs[reach] = cst(1.0);
    polys.push(p0);
    if m > 1 {
        let mut p1 = LaurentPoly::zero(reach);
        p1.add_shifted(&polys[0], -seq.a_minus1().conj() / rho(0), -1);
        p1.add_shifted(&polys[0], -a(0).conj() / rho(0), 0);
        polys.push(p1);
    }
    while polys.len() < m {
        let n = polys.len();
        let mut next = LaurentPoly::zero(reach);
        if n % 2 == 0 {
            // t(ρ_k P_k − a_k P_{k+1}) = a_{k+1} P_{k+1} + ρ_{k+1} P_{k+2}, k = n − 2
            let k = n - 2;
            let r = rho(k + 1);
            next.add_shifted(&polys[k], cst(rho(k) / r), 1);
            next.add_shifted(&polys[k + 1], -a(k) / r, 1);
            next.add_shifted(&polys[k + 1], -a(k + 1) / r, 0);
        } else {
            // t⁻¹(ρ_{k−1} P_{k−1} − ā_{k−1} P_k) = ā_k P_k + ρ_k P_{k+1}, k = n − 1
            let k = n - 1;
            let r = rho(k);
            next.add_shifted(&polys[k - 1], cst(rho(k - 1) / r), -1);
            next.add_shifted(&polys[k], -a(k - 1).conj() / r, -1);
            next.add_shifted(&polys[k], -a(k).conj() / r, 0);
        }
        polys.push(next);
    }

    let values: Vec<CircleFunction> = polys
        .iter()
        .map(|p| CircleFunction::from_fn(grid, |t| p.eval(t)))
        .collect();
    let gram = gram_matrix(&values, w);
    let mut gram_residual = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            let target = if i == j { 1.0 } else { 0.0 };
            gram_residual = gram_residual.max((gram[(i, j)] - target).norm());
        }
    }
    if gram_residual > 1e-6 {
        return Err(Error::Numerical(format!(
            "Laurent basis lost orthogonality (Gram residual {gram_residual:.3e})"
        )));
    }
    let leading = polys
        .iter()
        .enumerate()
        .map(|(n, p)| p.coeff(leading_power(n)))
        .collect();
    Ok(LaurentBasis {
        polys,
        values,
        leading,
        gram_residual,
    })
}

/// Herglotz transform of [`spectral_density`]; agrees with
/// [`schur_caratheodory`] up to grid truncation.
pub fn caratheodory_from_density(seq: &VerblunskySeq, grid: CircleGrid) -> Result<DiskFunction> {
    herglotz_from_density(&spectral_density(seq, grid))
}
