//! Inverse scattering: Verblunsky coefficients from the scattering function,
//! and the triangular transforms `ℳ` and `L`.
//!
//! For the shifted symbol `s·tⁿ` with Hankel matrix `H_n` put
//! `u_n = (I − H_n*H_n)⁻¹𝟙` and `v_n = (I − H_nH_n*)⁻¹t̄`. Then
//! `ā_n = (−H_n*v_n)[0]/u_n[0]` and `ρ_n = √(u_{n+1}[0]/u_n[0])`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{CircleFunction, CircleGrid};
use crate::error::{Error, Result};
use crate::hankel::{
    aak_data, hankel_from_symbol, regularity_test, solve_pair, HankelOp, RegularityReport,
    REGULAR_MARGIN,
};
use crate::linalg::{cmul, frobenius, hpd_inverse, identity_minus_gram, CMatrix};
use crate::opuc::VerblunskySeq;
use crate::scatter::forward_scatter;

const CONSISTENCY_WARN: f64 = 1e-4;
const SPREAD_WARN: f64 = 1e-4;
const RESIDUAL_TOL: f64 = 1e-6;

/// Kernel vectors of one shifted symbol.
#[derive(Clone, Debug)]
struct ShiftSolve {
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    /// `−H_n* v_n`.
    hv: Vec<Complex64>,
    /// `−H_n u_n`.
    hu: Vec<Complex64>,
}

fn solve_shifts(base: &HankelOp, count: usize) -> Result<Vec<ShiftSolve>> {
    (0..count)
        .into_par_iter()
        .map(|n| {
            let op = base.shifted(n)?;
            let (m, u, v) = solve_pair(&op).ok_or_else(|| Error::NearSingular {
                sigma_max: op.sigma_max(),
            })?;
            let hv = -(m.adjoint() * &v);
            let hu = -(&m * &u);
            Ok(ShiftSolve {
                u: u.as_slice().to_vec(),
                v: v.as_slice().to_vec(),
                hv: hv.as_slice().to_vec(),
                hu: hu.as_slice().to_vec(),
            })
        })
        .collect()
}

fn require_one_to_one(op: &HankelOp) -> Result<f64> {
    let sigma = op.sigma_max();
    if sigma >= 1.0 - REGULAR_MARGIN {
        return Err(Error::NotOneToOne(format!(
            "sigma_max(H) = {sigma:.12} is not below 1 - 1e-8"
        )));
    }
    Ok(sigma)
}

/// Recovered spectral data with diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct RecoveryReport {
    pub a_minus1: Complex64,
    pub a: Vec<Complex64>,
    pub rho: Vec<f64>,
    /// `sup_j |s_forward(t_j) − s(t_j)|`.
    pub residual: f64,
    pub regular: bool,
    /// `||a_n|² + ρ_n² − 1|`.
    pub consistency: Vec<f64>,
    /// Standard deviation of the pointwise `a₋₁` estimates.
    pub a_minus1_spread: f64,
    /// `u_n[0] = ⟨(I − H_n*H_n)⁻¹𝟙, 𝟙⟩`, `n = 0..=n_max+1`.
    pub kernel_diagonal: Vec<f64>,
    pub sigma_max: f64,
    pub regularity: RegularityReport,
    pub warnings: Vec<String>,
}

impl RecoveryReport {
    pub fn sequence(&self) -> Result<VerblunskySeq> {
        VerblunskySeq::new(self.a_minus1, self.a.clone())
    }

    /// Sequence schema plus `residual`, `regular`, `consistency` and the
    /// remaining diagnostics; `config` is embedded when given.
    pub fn to_json(&self, config: Option<serde_json::Value>) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let (Some(cfg), Some(obj)) = (config, v.as_object_mut()) {
            obj.insert("config".into(), cfg);
        }
        v
    }
}

fn mean_and_spread(values: &[Complex64]) -> (Complex64, f64) {
    if values.is_empty() {
        return (Complex64::new(0.0, 0.0), f64::INFINITY);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<Complex64>() / n;
    let var = values.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn unimodular(z: Complex64) -> Option<Complex64> {
    (z.norm() > 1e-12).then(|| z / z.norm())
}

/// `a₋₁` from `s·ψ̄·(1 + a₋₁φ) = −a₋₁·ψ·(1 + conj(a₋₁φ))`, solved pointwise
/// (with `|a₋₁| = 1`) and averaged.
fn a_minus1_from_aak(
    s: &CircleFunction,
    phi: &CircleFunction,
    psi: &CircleFunction,
) -> (Option<Complex64>, f64) {
    let mut est = Vec::with_capacity(s.len());
    for ((sv, p), q) in s.samples().iter().zip(phi.samples()).zip(psi.samples()) {
        let den = q + sv * q.conj() * p;
        if den.norm() < 1e-12 {
            continue;
        }
        est.push(-(sv * q.conj() + q * p.conj()) / den);
    }
    let (mean, spread) = mean_and_spread(&est);
    (unimodular(mean), spread)
}

/// `a₋₁ = −∫ s·D̃_*/D̃ dm` for the Szegő function `D̃` of `(a₋₁, a)`.
fn a_minus1_refined(s: &CircleFunction, seq: &VerblunskySeq) -> Result<(Option<Complex64>, f64)> {
    let fwd = forward_scatter(seq, s.grid())?;
    let est: Vec<Complex64> = s
        .samples()
        .iter()
        .zip(fwd.d_star.samples())
        .zip(fwd.d_boundary.samples())
        .map(|((sv, ds), d)| -sv * ds / d)
        .collect();
    let (mean, spread) = mean_and_spread(&est);
    Ok((unimodular(mean), spread))
}

/// `conj(a_n)` for `n ≤ n_max`, `ρ_n` from kernel ratios, `a₋₁` from the
/// boundary identity, then a forward pass to measure the residual.
pub fn recover_verblunsky(
    s: &CircleFunction,
    n_max: usize,
    order: usize,
) -> Result<RecoveryReport> {
    let grid = s.grid();
    let worst = s
        .samples()
        .iter()
        .fold(0.0f64, |m, z| m.max((z.norm() - 1.0).abs()));
    if worst > 1e-6 {
        return Err(Error::domain(format!(
            "scattering function is not unimodular (max ||s| - 1| = {worst:.3e})"
        )));
    }
    if order < n_max + 64 {
        return Err(Error::arg(format!(
            "Hankel order {order} must be at least n_max + 64 = {}",
            n_max + 64
        )));
    }
    if order > grid.size() / 4 {
        return Err(Error::arg(format!(
            "Hankel order {order} exceeds N/4 = {}",
            grid.size() / 4
        )));
    }
    let coeffs = s.coefficients();
    let base = hankel_from_symbol(&coeffs, order)?;
    let sigma = require_one_to_one(&base)?;
    let solves = solve_shifts(&base, n_max + 2)?;

    let kernel_diagonal: Vec<f64> = solves.iter().map(|x| x.u[0].re).collect();
    let a: Vec<Complex64> = solves[..=n_max]
        .iter()
        .map(|x| (x.hv[0] / x.u[0]).conj())
        .collect();
    let rho: Vec<f64> = (0..=n_max)
        .map(|n| (kernel_diagonal[n + 1] / kernel_diagonal[n]).sqrt())
        .collect();
    let consistency: Vec<f64> = a
        .iter()
        .zip(&rho)
        .map(|(z, r)| (z.norm_sqr() + r * r - 1.0).abs())
        .collect();
    let mut warnings = Vec::new();
    for (n, gap) in consistency.iter().enumerate() {
        if *gap > CONSISTENCY_WARN {
            warnings.push(format!("n = {n}: ||a_n|^2 + rho_n^2 - 1| = {gap:.3e}"));
        }
    }
    if let Some(n) = a.iter().position(|z| z.norm() >= 1.0) {
        return Err(Error::Numerical(format!("recovered |a_{n}| >= 1")));
    }

    let aak = aak_data(&base, grid)?;
    let (first, _) = a_minus1_from_aak(s, &aak.phi_boundary, &aak.psi_boundary);
    let mut a_minus1 = first.unwrap_or(Complex64::new(-1.0, 0.0));
    let (refined, spread) = a_minus1_refined(s, &VerblunskySeq::new(a_minus1, a.clone())?)?;
    if let Some(z) = refined {
        a_minus1 = z;
    }
    if spread > SPREAD_WARN {
        warnings.push(format!(
            "a_minus1 estimate is not constant on the circle (spread {spread:.3e})"
        ));
    }

    let seq = VerblunskySeq::new(a_minus1, a.clone())?;
    let fwd = forward_scatter(&seq, grid)?;
    let residual = fwd
        .s
        .samples()
        .iter()
        .zip(s.samples())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
    let regularity = regularity_test(&coeffs, fwd.d0, order)?;
    let regular = regularity.regular && residual <= RESIDUAL_TOL;
    if !regular {
        warnings.push(format!(
            "not regular: forward residual {residual:.3e}, g[0]·D(0)² = {:.9}; s does not determine the coefficients",
            regularity.lhs * fwd.d0 * fwd.d0
        ));
    }
    Ok(RecoveryReport {
        a_minus1,
        a,
        rho,
        residual,
        regular,
        consistency,
        a_minus1_spread: spread,
        kernel_diagonal,
        sigma_max: sigma,
        regularity,
        warnings,
    })
}

/// Lower-triangular GLM transform from the alternating monomial basis
/// `(1, t̄, t, t̄², …)` to the scattering-normalized orthonormal basis.
#[derive(Clone, Debug)]
pub struct GlmMatrix {
    pub matrix: DMatrix<Complex64>,
}

impl GlmMatrix {
    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.order()).map(|i| self.matrix[(i, i)]).collect()
    }

    /// Largest `|ℳ_{ij}|` with `j > i`.
    pub fn upper_part_max(&self) -> f64 {
        let m = self.order();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in i + 1..m {
                worst = worst.max(self.matrix[(i, j)].norm());
            }
        }
        worst
    }

    /// Largest column norm over the leading block.
    pub fn max_column_norm(&self) -> f64 {
        self.matrix
            .column_iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `max_n ||ℳⁿ_n| − (ρ₀⋯ρ_{n−1})/D(0)|`.
    pub fn diagonal_gap(&self, seq: &VerblunskySeq, d0: f64) -> f64 {
        self.diagonal()
            .iter()
            .enumerate()
            .map(|(n, z)| (z.norm() - seq.rho_product(n) / d0).abs())
            .fold(0.0, f64::max)
    }
}

fn glm_from_solves(solves: &[ShiftSolve], a_minus1: Complex64, m: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(m, m);
    for (c, x) in solves.iter().enumerate().take(m) {
        let n = c / 2;
        if c % 2 == 0 {
            let nu = x.u[0].re.sqrt();
            for j in 0.. {
                let even = 2 * (n + j);
                if even >= m {
                    break;
                }
                out[(even, c)] += x.u[j] / nu;
                if even + 1 < m {
                    out[(even + 1, c)] += x.hu[j] / nu;
                }
            }
        } else {
            let nv = x.v[0].re.sqrt();
            let phase = -a_minus1;
            for j in 0.. {
                let odd = 2 * (n + j) + 1;
                if odd >= m {
                    break;
                }
                out[(odd, c)] += phase * x.v[j] / nv;
                if odd + 1 < m {
                    out[(odd + 1, c)] += phase * x.hv[j] / nv;
                }
            }
        }
    }
    out
}

fn glm_inputs(s: &CircleFunction, m: usize, order: usize) -> Result<(HankelOp, Vec<ShiftSolve>)> {
    if m == 0 || m > order {
        return Err(Error::arg(format!("GLM order {m} must be in 1..={order}")));
    }
    let base = hankel_from_symbol(&s.coefficients(), order)?;
    require_one_to_one(&base)?;
    let solves = solve_shifts(&base, m)?;
    Ok((base, solves))
}

/// Leading `m×m` block of `ℳ`. Column `2n` comes from the kernel at `0` of
/// `s·t^{2n}`, column `2n+1` from the kernel at `∞` of `s·t^{2n+1}`.
pub fn glm_matrix(
    s: &CircleFunction,
    a_minus1: Complex64,
    m: usize,
    order: usize,
) -> Result<GlmMatrix> {
    let (_, solves) = glm_inputs(s, m, order)?;
    Ok(GlmMatrix {
        matrix: glm_from_solves(&solves, a_minus1, m),
    })
}

/// Leading block of `U*B⁻¹U` with `B = [[I, H*], [H, I]]`, where `U` maps
/// `e_{2n} ↦ tⁿ ⊕ 0` and `e_{2n+1} ↦ 0 ⊕ t^{−n−1}`.
pub fn glm_gram_block(h: &HankelOp, m: usize) -> Result<DMatrix<Complex64>> {
    let hm = h.matrix();
    let order = h.order();
    let g = hpd_inverse(identity_minus_gram(&hm, 1.0)).ok_or_else(|| Error::NearSingular {
        sigma_max: h.sigma_max(),
    })?;
    // B⁻¹ = [[G, −GH*], [−HG, I + HGH*]]
    let hg = cmul(&hm, &g);
    let lower_right = CMatrix::identity(order, order) + cmul(&hg, &hm.adjoint());
    let entry = |i: usize, j: usize| -> Complex64 {
        match (i % 2, j % 2) {
            (0, 0) => g[(i / 2, j / 2)],
            (1, 0) => -hg[(i / 2, j / 2)],
            (0, 1) => -hg[(j / 2, i / 2)].conj(),
            _ => lower_right[(i / 2, j / 2)],
        }
    };
    Ok(DMatrix::from_fn(m, m, entry))
}

/// Relative Frobenius gap between `U*B⁻¹U` and `ℳℳ*` on the leading block.
pub fn glm_factorization_residual(
    s: &CircleFunction,
    a_minus1: Complex64,
    m: usize,
    order: usize,
) -> Result<f64> {
    let (base, solves) = glm_inputs(s, m, order)?;
    let glm = glm_from_solves(&solves, a_minus1, m);
    let lhs = glm_gram_block(&base, m)?;
    let rhs = &glm * glm.adjoint();
    Ok(frobenius(&(&lhs - rhs)) / frobenius(&lhs))
}

/// Lower-triangular `L` with `(I − H*H)⁻¹ = LL*`; column `n` is
/// `u_n/√u_n[0]` moved down by `n` rows.
#[derive(Clone, Debug)]
pub struct LMatrix {
    pub matrix: DMatrix<Complex64>,
    /// Relative Frobenius gap of `LL*` against `(I − H*H)⁻¹` on the block.
    pub residual: f64,
}

impl LMatrix {
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.matrix.nrows())
            .map(|i| self.matrix[(i, i)].re)
            .collect()
    }

    /// `ρ_n = L^{n+1}_{n+1}/Lⁿ_n`.
    pub fn rho(&self) -> Vec<f64> {
        self.diagonal().windows(2).map(|w| w[1] / w[0]).collect()
    }
}

pub fn l_matrix(s: &CircleFunction, m: usize, order: usize) -> Result<LMatrix> {
    let (base, solves) = glm_inputs(s, m, order)?;
    let mut l = DMatrix::zeros(m, m);
    for (c, x) in solves.iter().enumerate() {
        let nu = x.u[0].re.sqrt();
        for r in c..m {
            l[(r, c)] = x.u[r - c] / nu;
        }
    }
    let g = hpd_inverse(identity_minus_gram(&base.matrix(), 1.0)).ok_or_else(|| {
        Error::NearSingular {
            sigma_max: base.sigma_max(),
        }
    })?;
    let block = g.view((0, 0), (m, m)).into_owned();
    let residual = frobenius(&(&block - &l * l.adjoint())) / frobenius(&block);
    Ok(LMatrix {
        matrix: l,
        residual,
    })
}

/// Convenience: forward map on `grid`, then recovery.
pub fn round_trip(
    seq: &VerblunskySeq,
    grid: CircleGrid,
    n_max: usize,
    order: usize,
) -> Result<RecoveryReport> {
    let data = forward_scatter(seq, grid)?;
    recover_verblunsky(&data.s, n_max, order)
}
