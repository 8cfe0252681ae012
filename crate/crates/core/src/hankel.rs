//! Truncated Hankel operators `H² → H²₋` and the AAK point-evaluation data.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{CircleFunction, CircleGrid, Coefficients, DiskFunction, Side};
use crate::error::{Error, Result};
use crate::linalg::{hpd_solve, identity_minus_gram, sigma_max, unit, CMatrix, CVector};

/// Solves at `r = 1` require `σ_max < 1 − SINGULAR_MARGIN`.
pub const SINGULAR_MARGIN: f64 = 1e-10;
/// The regularity test requires `σ_max < 1 − REGULAR_MARGIN`.
pub const REGULAR_MARGIN: f64 = 1e-8;
/// Relative tolerance of `g[0]·D(0)² = 1`.
pub const REGULAR_TOL: f64 = 1e-4;
const SWEEP: [f64; 3] = [0.9, 0.99, 0.999];
const SWEEP_BLOWUP: f64 = 1e6;

/// `H[k][j] = ŝ(−(k + j + 1 + shift))`, `0 ≤ k, j < order`.
///
/// All shifts of a symbol share one list of negative coefficients.
#[derive(Clone, Debug)]
pub struct HankelOp {
    negative: Arc<Vec<Complex64>>,
    order: usize,
    shift: usize,
}

impl HankelOp {
    /// `negative[m] = ŝ(−(m + 1))`.
    pub fn from_negative_coeffs(negative: Vec<Complex64>, order: usize) -> Result<Self> {
        Self::checked(Arc::new(negative), order, 0)
    }

    fn checked(negative: Arc<Vec<Complex64>>, order: usize, shift: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::arg("Hankel order must be positive"));
        }
        let need = 2 * order - 1 + shift;
        if negative.len() < need {
            return Err(Error::arg(format!(
                "Hankel order {order} with shift {shift} needs {need} negative coefficients, have {}",
                negative.len()
            )));
        }
        Ok(Self {
            negative,
            order,
            shift,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    /// Operator of the symbol `s·tⁿ` relative to this one.
    pub fn shifted(&self, n: usize) -> Result<Self> {
        Self::checked(self.negative.clone(), self.order, self.shift + n)
    }

    /// Same symbol, different truncation order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::checked(self.negative.clone(), order, self.shift)
    }

    pub fn entry(&self, k: usize, j: usize) -> Complex64 {
        self.negative[k + j + self.shift]
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.order, self.order, |k, j| self.entry(k, j))
    }

    pub fn sigma_max(&self) -> f64 {
        sigma_max(&self.matrix())
    }

    /// `Σ_{k,j} |H[k][j]|²`.
    pub fn frobenius_sq(&self) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.order {
            for j in 0..self.order {
                acc += self.entry(k, j).norm_sqr();
            }
        }
        acc
    }
}

/// Hankel operator of a symbol given by its Fourier coefficients.
pub fn hankel_from_symbol(s: &Coefficients, order: usize) -> Result<HankelOp> {
    let available = s.grid().size() / 2 - 1;
    HankelOp::from_negative_coeffs(s.negative(available), order)
}

/// Right-hand side of a block solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rhs {
    /// `𝟙 ∈ H²`: solves `(I − r²H*H) g = 𝟙`.
    UnitH2,
    /// `t̄ ∈ H²₋`: solves `(I − r²HH*) h = t̄`.
    UnitH2Minus,
}

fn system(h: &CMatrix, rhs: Rhs, r: f64) -> CMatrix {
    match rhs {
        Rhs::UnitH2 => identity_minus_gram(h, r),
        Rhs::UnitH2Minus => identity_minus_gram(&h.adjoint(), r),
    }
}

/// Dense Hermitian solve; at `r = 1` the operator must stay clear of the
/// unit singular value.
pub fn solve_block(h: &HankelOp, rhs: Rhs, r: f64) -> Result<DVector<Complex64>> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::arg(format!("radius must lie in (0, 1], got {r}")));
    }
    let m = h.matrix();
    if r == 1.0 {
        let sigma = sigma_max(&m);
        if sigma >= 1.0 - SINGULAR_MARGIN {
            return Err(Error::NearSingular { sigma_max: sigma });
        }
    }
    hpd_solve(system(&m, rhs, r), &unit(h.order(), 0)).ok_or_else(|| Error::NearSingular {
        sigma_max: sigma_max(&m),
    })
}

/// Both kernel vectors `u = (I − H*H)⁻¹𝟙`, `v = (I − HH*)⁻¹t̄` and `H` itself,
/// without the singular-value guard.
pub(crate) fn solve_pair(h: &HankelOp) -> Option<(CMatrix, CVector, CVector)> {
    let m = h.matrix();
    let e0 = unit(h.order(), 0);
    let u = hpd_solve(system(&m, Rhs::UnitH2, 1.0), &e0)?;
    // H is complex symmetric, so I − HH* is the conjugate of I − H*H
    let v = u.conjugate();
    Some((m, u, v))
}

/// Taylor series `Σ x_k t^k` sampled on the grid.
pub(crate) fn taylor_boundary(x: &[Complex64], grid: CircleGrid) -> CircleFunction {
    DiskFunction::interior(x.to_vec()).boundary(grid)
}

/// AAK quantities of a Hankel operator with `σ_max < 1`.
#[derive(Clone, Debug)]
pub struct AakData {
    /// `(I − H*H)⁻¹𝟙`.
    pub g: DVector<Complex64>,
    /// `(I − HH*)⁻¹t̄`.
    pub h: DVector<Complex64>,
    pub psi0: f64,
    pub psi: DiskFunction,
    pub psi_boundary: CircleFunction,
    pub phi: DiskFunction,
    pub phi_boundary: CircleFunction,
    /// `|log ψ_H(0) − ∫ log|ψ_H| dm|`; zero for outer `ψ_H`.
    pub outer_gap: f64,
}

impl AakData {
    pub fn pythagoras_residual(&self) -> f64 {
        self.phi_boundary
            .samples()
            .iter()
            .zip(self.psi_boundary.samples())
            .fold(0.0, |m, (p, q)| {
                m.max((p.norm_sqr() + q.norm_sqr() - 1.0).abs())
            })
    }
}

pub fn aak_data(op: &HankelOp, grid: CircleGrid) -> Result<AakData> {
    if op.order() > grid.size() / 2 {
        return Err(Error::arg("Hankel order exceeds half the grid"));
    }
    let g = solve_block(op, Rhs::UnitH2, 1.0)?;
    let h = g.conjugate();
    let m = op.matrix();
    let g0 = g[0].re;
    let psi0 = 1.0 / g0.sqrt();
    let g_boundary = taylor_boundary(g.as_slice(), grid);
    if let Some(j) = g_boundary.samples().iter().position(|z| z.norm() < 1e-300) {
        return Err(Error::Numerical(format!("kernel vanishes at node {j}")));
    }
    let psi_boundary = g_boundary.map(|z| 1.0 / (psi0 * z));
    let mut psi = DiskFunction::from_boundary(&psi_boundary, Side::Interior);
    psi.set_leading(Complex64::new(psi0, 0.0));
    let mean_log = psi_boundary
        .samples()
        .iter()
        .map(|z| z.norm().ln())
        .sum::<f64>()
        / grid.size() as f64;
    let outer_gap = (psi0.ln() - mean_log).abs();

    let hv = -(m.adjoint() * &h);
    let hv_boundary = taylor_boundary(hv.as_slice(), grid);
    let phi_boundary = hv_boundary
        .zip_with(&g_boundary, |a, b| a / b)?
        .map_with_node(|t, q| t * q);
    let mut phi = DiskFunction::from_boundary(&phi_boundary, Side::Interior);
    phi.set_leading(Complex64::new(0.0, 0.0));
    Ok(AakData {
        g,
        h,
        psi0,
        psi,
        psi_boundary,
        phi,
        phi_boundary,
        outer_gap,
    })
}

/// `ψ_H(0)` and `ψ_H(z) = 1/(ψ_H(0)·g(z))`.
pub fn psi_h(op: &HankelOp, grid: CircleGrid) -> Result<(f64, DiskFunction)> {
    let d = aak_data(op, grid)?;
    Ok((d.psi0, d.psi))
}

/// `φ_H(z) = z·(−H*h)(z)/g(z)`.
pub fn phi_h(op: &HankelOp, grid: CircleGrid) -> Result<DiskFunction> {
    Ok(aak_data(op, grid)?.phi)
}

/// Outcome of the regularity test `lim g[0] = 1/D(0)²`.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    /// `⟨(I − H*H)⁻¹𝟙, 𝟙⟩` (at `r = 1`, or the last sweep radius).
    pub lhs: f64,
    /// `1/D(0)²`.
    pub rhs: f64,
    pub sigma_max: f64,
    pub order: usize,
    /// `(r, g[0](r))` when the `r = 1` solve was not attempted.
    pub sweep: Vec<(f64, f64)>,
    /// `g[0]` at twice the order, when the symbol has enough coefficients.
    pub lhs_doubled: Option<f64>,
    pub converged: Option<bool>,
    pub reason: Option<String>,
}

fn g0_at(op: &HankelOp, r: f64) -> Option<f64> {
    let m = op.matrix();
    hpd_solve(identity_minus_gram(&m, r), &unit(op.order(), 0)).map(|g| g[0].re)
}

pub fn regularity_test(s: &Coefficients, d0: f64, order: usize) -> Result<RegularityReport> {
    if !(d0 > 0.0) {
        return Err(Error::arg("D(0) must be positive"));
    }
    let op = hankel_from_symbol(s, order)?;
    let rhs = 1.0 / (d0 * d0);
    let sigma = op.sigma_max();
    let mut report = RegularityReport {
        regular: false,
        lhs: f64::NAN,
        rhs,
        sigma_max: sigma,
        order,
        sweep: Vec::new(),
        lhs_doubled: None,
        converged: None,
        reason: None,
    };
    if sigma >= 1.0 - REGULAR_MARGIN {
        for r in SWEEP {
            let g0 = g0_at(&op, r).unwrap_or(f64::INFINITY);
            report.sweep.push((r, g0));
        }
        report.lhs = report.sweep.last().map_or(f64::NAN, |x| x.1);
        let first = report.sweep[0].1;
        report.reason = Some(if report.lhs > SWEEP_BLOWUP * first {
            format!("sigma_max = {sigma:.12}; r-sweep grows past 1e6, limit does not exist")
        } else {
            format!("sigma_max = {sigma:.12} is not below 1 - 1e-8")
        });
        return Ok(report);
    }
    let Some(lhs) = g0_at(&op, 1.0) else {
        report.reason = Some("Cholesky breakdown at r = 1".into());
        return Ok(report);
    };
    report.lhs = lhs;
    if let Ok(op2) = op.with_order(2 * order) {
        if let Some(l2) = g0_at(&op2, 1.0) {
            report.lhs_doubled = Some(l2);
            report.converged = Some((l2 - lhs).abs() <= 10.0 * REGULAR_TOL * lhs);
        } else {
            report.converged = Some(false);
        }
    }
    let gap = (lhs * d0 * d0 - 1.0).abs();
    report.regular = gap <= REGULAR_TOL;
    if !report.regular {
        report.reason = Some(format!(
            "g[0]·D(0)² = {:.9} differs from 1 by {gap:.3e}",
            lhs * d0 * d0
        ));
    }
    Ok(report)
}
