//! Class-membership diagnostics: Szegő and Golinskii–Ibragimov sums, the
//! `B₂^{1/2}` norm and winding index of `s`, the A₂ constant of `w`, and the
//! Widom determinant identity.
//!
//! Every infinite quantity is only ever seen through a finite window, so the
//! report carries "windowed divergence" flags next to the raw values.

use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{CircleFunction, CircleGrid, Coefficients};
use crate::error::{Error, Result};
use crate::hankel::{hankel_from_symbol, regularity_test, REGULAR_MARGIN};
use crate::inverse::{glm_matrix, recover_verblunsky};
use crate::linalg::{hpd_log_det, identity_minus_gram};
use crate::opuc::{jacobi_sequence, spectral_density, VerblunskySeq};
use crate::scatter::{exclusion_mask, forward_scatter, sup_distance_excluding};

/// A windowed sum is divergent if doubling the window grows it by more than this.
pub const DIVERGENCE_GROWTH: f64 = 0.10;
/// A₂ is stable if the relative change from `N/2` to `N` is at most this.
pub const A2_STABILITY: f64 = 0.05;
/// Default radius for the winding index.
pub const DEFAULT_RADIUS: f64 = 0.95;
const HS_MARGIN: f64 = 1e-6;

/// A sum over a window and over the half window.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindowedSum {
    pub value: f64,
    pub half_window: f64,
    pub divergent: bool,
}

impl WindowedSum {
    fn new(value: f64, half_window: f64) -> Self {
        let divergent = value > (1.0 + DIVERGENCE_GROWTH) * half_window && value > 1e-300;
        Self {
            value,
            half_window,
            divergent,
        }
    }
}

/// `Σ_k |k||c_k|²` over `|k| < N/2`, with the `|k| ≤ N/4` value as the
/// half window.
pub fn besov_half_norm(c: &Coefficients) -> WindowedSum {
    let half = c.grid().size() as i64 / 4;
    let mut value = 0.0;
    let mut inner = 0.0;
    for (k, v) in c.iter() {
        let term = k.unsigned_abs() as f64 * v.norm_sqr();
        if k.abs() == 2 * half {
            continue;
        }
        value += term;
        if k.abs() <= half {
            inner += term;
        }
    }
    WindowedSum::new(value, inner)
}

/// `Σ_{k=1}^{kmax} k|ĉ(−k)|²`.
pub fn besov_negative_part(c: &Coefficients, kmax: usize) -> f64 {
    (1..=kmax as i64)
        .map(|k| k as f64 * c.get(-k).norm_sqr())
        .sum()
}

fn sequence_window(seq: &VerblunskySeq) -> (usize, usize) {
    let len = seq.len();
    ((len / 2).max(16), len.max(32))
}

/// `Σ_k |a_k|²` over windows `max(16, L/2)` and `max(32, L)`.
pub fn szego_sum(seq: &VerblunskySeq) -> WindowedSum {
    let (lo, hi) = sequence_window(seq);
    let part = |m: usize| (0..m).map(|k| seq.get(k).norm_sqr()).sum::<f64>();
    WindowedSum::new(part(hi), part(lo))
}

/// `Σ_k k|a_k|²` over windows `max(16, L/2)` and `max(32, L)`.
pub fn gi_sum(seq: &VerblunskySeq) -> WindowedSum {
    let (lo, hi) = sequence_window(seq);
    let part = |m: usize| {
        (0..m)
            .map(|k| k as f64 * seq.get(k).norm_sqr())
            .sum::<f64>()
    };
    WindowedSum::new(part(hi), part(lo))
}

/// Winding number of the harmonic extension of `s` at some radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Winding {
    pub index: i64,
    pub radius: f64,
    pub min_modulus: f64,
}

pub fn winding_index(s: &CircleFunction, radius: f64) -> Result<Winding> {
    let worst = s
        .samples()
        .iter()
        .fold(0.0f64, |m, z| m.max((z.norm() - 1.0).abs()));
    if worst > 1e-6 {
        return Err(Error::domain(format!(
            "winding index needs |s| = 1 (max deviation {worst:.3e})"
        )));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::arg(format!(
            "radius must lie in (0, 1), got {radius}"
        )));
    }
    let mut tried = Vec::new();
    // the index is a limit as r → 1, so retries move toward the circle
    for r in [radius, (1.0 + radius) / 2.0, (3.0 + radius) / 4.0] {
        if tried.contains(&r) {
            continue;
        }
        tried.push(r);
        let ext = s.poisson_extension(r);
        let vals = ext.samples();
        let min_modulus = vals.iter().fold(f64::INFINITY, |m, z| m.min(z.norm()));
        if min_modulus <= 0.1 {
            continue;
        }
        let n = vals.len();
        let total: f64 = (0..n).map(|j| (vals[(j + 1) % n] / vals[j]).arg()).sum();
        return Ok(Winding {
            index: (total / (2.0 * std::f64::consts::PI)).round() as i64,
            radius: r,
            min_modulus,
        });
    }
    Err(Error::Numerical(format!(
        "harmonic extension passes within 0.1 of zero at radii {tried:?}"
    )))
}

/// Largest `⟨w⟩_I⟨w⁻¹⟩_I` over dyadic arcs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct A2Constant {
    pub value: f64,
    /// Nodes where `w = 0`, left out of every mean.
    pub skipped: usize,
}

/// Scan of all arcs of `N/2, N/4, …, 8` consecutive nodes (every translate).
pub fn a2_constant(w: &CircleFunction) -> Result<A2Constant> {
    let vals = w.real_parts();
    if let Some((j, x)) = vals.iter().enumerate().find(|(_, x)| **x < 0.0) {
        return Err(Error::domain(format!(
            "weight is negative at node {j} ({x:.3e})"
        )));
    }
    let n = vals.len();
    let mut sum_w = vec![0.0; 2 * n + 1];
    let mut sum_inv = vec![0.0; 2 * n + 1];
    let mut count = vec![0usize; 2 * n + 1];
    for i in 0..2 * n {
        let x = vals[i % n];
        let live = x > 0.0;
        sum_w[i + 1] = sum_w[i] + if live { x } else { 0.0 };
        sum_inv[i + 1] = sum_inv[i] + if live { 1.0 / x } else { 0.0 };
        count[i + 1] = count[i] + usize::from(live);
    }
    let mut best = 0.0f64;
    let mut len = n / 2;
    while len >= 8 {
        for start in 0..n {
            let m = count[start + len] - count[start];
            if m == 0 {
                continue;
            }
            let mw = (sum_w[start + len] - sum_w[start]) / m as f64;
            let mi = (sum_inv[start + len] - sum_inv[start]) / m as f64;
            best = best.max(mw * mi);
        }
        len /= 2;
    }
    Ok(A2Constant {
        value: best,
        skipped: vals.iter().filter(|x| **x == 0.0).count(),
    })
}

/// One row of the Widom table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WidomRow {
    pub order: usize,
    /// `det(I − H*H)`; `0` when the matrix is not positive definite.
    pub det: f64,
    /// `Π ρ_n^{2(n+1)}`.
    pub product: f64,
    /// `|det − product|/product`.
    pub gap: f64,
}

impl WidomRow {
    pub fn csv_header() -> &'static str {
        "M,det,product,gap"
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e}",
            self.order, self.det, self.product, self.gap
        )
    }
}

/// `det(I − H_M*H_M)` against `Π ρ_n^{2(n+1)}` for each order in `orders`.
pub fn widom_det(seq: &VerblunskySeq, grid: CircleGrid, orders: &[usize]) -> Result<Vec<WidomRow>> {
    let data = forward_scatter(seq, grid)?;
    let coeffs = data.s.coefficients();
    let product = seq.widom_product();
    orders
        .par_iter()
        .map(|&m| {
            let h = hankel_from_symbol(&coeffs, m)?;
            let det = hpd_log_det(identity_minus_gram(&h.matrix(), 1.0)).map_or(0.0, f64::exp);
            Ok(WidomRow {
                order: m,
                det,
                product,
                gap: (det - product).abs() / product,
            })
        })
        .collect()
}

/// What to classify. At least one of `seq` and `s` must be present; with only
/// `s`, `D(0)` is taken from `d0` or from a recovery attempt.
#[derive(Clone, Debug)]
pub struct ClassifyInput {
    pub seq: Option<VerblunskySeq>,
    pub s: Option<CircleFunction>,
    pub d0: Option<f64>,
    pub grid: CircleGrid,
    pub order: usize,
    pub radius: f64,
    /// Recovery order used when only `s` is supplied.
    pub n_max: usize,
}

impl ClassifyInput {
    pub fn from_seq(seq: VerblunskySeq, grid: CircleGrid, order: usize) -> Self {
        Self {
            seq: Some(seq),
            s: None,
            d0: None,
            grid,
            order,
            radius: DEFAULT_RADIUS,
            n_max: 8,
        }
    }

    pub fn from_symbol(s: CircleFunction, d0: Option<f64>, order: usize) -> Self {
        Self {
            grid: s.grid(),
            seq: None,
            s: Some(s),
            d0,
            order,
            radius: DEFAULT_RADIUS,
            n_max: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub szego_sum: Option<WindowedSum>,
    pub gi_sum: Option<WindowedSum>,
    pub besov: WindowedSum,
    pub index: Option<i64>,
    pub index_radius: Option<f64>,
    pub a2_constant: Option<f64>,
    /// A₂ scan on the grid of half the size.
    pub a2_constant_coarse: Option<f64>,
    pub a2_stable: Option<bool>,
    pub hankel_norm: f64,
    /// `∫ w⁻¹ dm`.
    pub w_inverse_integral: Option<f64>,
    pub glm_max_column_norm: Option<f64>,
    pub regularity_lhs: f64,
    pub regularity_rhs: f64,
    pub regular: bool,
    pub hs_member: bool,
    pub gi_member: bool,
    pub diagnostics: Vec<String>,
}

pub fn classify(input: &ClassifyInput) -> Result<ClassReport> {
    let grid = input.grid;
    let mut diagnostics = Vec::new();
    let mut recovered_consistently = true;
    let (s, d0, seq, w, w_coarse) = match (&input.seq, &input.s) {
        (Some(seq), _) => {
            let data = forward_scatter(seq, grid)?;
            if data.near_zero {
                diagnostics.push("weight nearly vanishes on the grid; tolerances relaxed".into());
            }
            let coarse = spectral_density(seq, grid.coarsen()?);
            (
                data.s,
                data.d0,
                Some(seq.clone()),
                Some(data.w),
                Some(coarse),
            )
        }
        (None, Some(s)) => {
            let rec = recover_verblunsky(s, input.n_max, input.order);
            match (input.d0, rec) {
                (Some(d0), Ok(rep)) => {
                    let seq = rep.regular.then(|| rep.sequence()).transpose()?;
                    (s.clone(), d0, seq, None, None)
                }
                (Some(d0), Err(e)) => {
                    diagnostics.push(format!("recovery failed: {e}"));
                    (s.clone(), d0, None, None, None)
                }
                (None, Ok(rep)) => {
                    let seq = rep.sequence()?;
                    let d0 = forward_scatter(&seq, grid)?.d0;
                    if !rep.regular {
                        recovered_consistently = false;
                        diagnostics.push(format!(
                            "D(0) taken from recovered coefficients with forward residual {:.3e}",
                            rep.residual
                        ));
                    }
                    (s.clone(), d0, rep.regular.then_some(seq), None, None)
                }
                (None, Err(e)) => return Err(e),
            }
        }
        (None, None) => return Err(Error::arg("classify needs a sequence or a symbol")),
    };
    // with only s, the weight is known once s determines the coefficients
    let (w, w_coarse) = match (w, &seq) {
        (Some(w), _) => (Some(w), w_coarse),
        (None, Some(seq)) => (
            Some(spectral_density(seq, grid)),
            Some(spectral_density(seq, grid.coarsen()?)),
        ),
        (None, None) => (None, None),
    };

    let coeffs = s.coefficients();
    let besov = besov_half_norm(&coeffs);
    let (index, index_radius) = match winding_index(&s, input.radius) {
        Ok(wi) => (Some(wi.index), Some(wi.radius)),
        Err(e) => {
            diagnostics.push(format!("winding index unavailable: {e}"));
            (None, None)
        }
    };
    let h = hankel_from_symbol(&coeffs, input.order)?;
    let hankel_norm = h.sigma_max();
    let regularity = regularity_test(&coeffs, d0, input.order)?;
    if let Some(reason) = &regularity.reason {
        diagnostics.push(format!("regularity: {reason}"));
    }
    if regularity.converged == Some(false) {
        diagnostics.push("regularity: truncation not converged between M and 2M".into());
    }

    let a2 = w.as_ref().map(a2_constant).transpose()?;
    let a2_coarse = w_coarse.as_ref().map(a2_constant).transpose()?;
    let a2_stable = match (a2, a2_coarse) {
        (Some(f), Some(c)) => Some((f.value - c.value).abs() <= A2_STABILITY * c.value),
        _ => None,
    };
    let w_inverse_integral = w.as_ref().map(|w| {
        let vals = w.real_parts();
        if vals.iter().any(|x| *x <= 0.0) {
            f64::INFINITY
        } else {
            vals.iter().map(|x| 1.0 / x).sum::<f64>() / vals.len() as f64
        }
    });
    let glm_max_column_norm = match &seq {
        Some(seq) if hankel_norm < 1.0 - REGULAR_MARGIN => {
            let m = (input.order / 8).clamp(2, 16);
            Some(glm_matrix(&s, seq.a_minus1(), m, input.order)?.max_column_norm())
        }
        _ => None,
    };

    // without a supplied D(0) the test is only as good as the recovered coefficients
    let regular = regularity.regular && recovered_consistently;
    let hs_raw = hankel_norm < 1.0 - HS_MARGIN && a2_stable == Some(true);
    let hs_member = regular && hs_raw;
    let gi_sums = seq.as_ref().map(gi_sum);
    let gi_raw = gi_sums.is_some_and(|g| !g.divergent) && !besov.divergent && index == Some(0);
    let gi_member = hs_member && gi_raw;
    if hs_raw && !regular {
        diagnostics.push(
            "inconsistent: sigma_max < 1 and A2 stable, but the regularity test fails".into(),
        );
    }
    if gi_raw && !hs_member {
        diagnostics
            .push("inconsistent: GI conditions hold on the window but HS membership fails".into());
    }
    let int_finite = w_inverse_integral.is_some_and(f64::is_finite);
    if let Some(stable) = a2_stable {
        let operator_side = hankel_norm < 1.0 - HS_MARGIN && int_finite;
        if stable != operator_side {
            diagnostics.push(format!(
                "equivalence cross-check disagrees: A2 stable = {stable}, sigma_max < 1 with integrable 1/w = {operator_side}"
            ));
        }
    }
    if let (Some(g), Some(0)) = (&gi_sums, index) {
        if g.divergent != besov.divergent {
            diagnostics.push(format!(
                "windowed divergence disagrees: coefficients {} vs symbol {}",
                g.divergent, besov.divergent
            ));
        }
    }
    if gi_sums.is_some_and(|g| g.divergent) {
        diagnostics.push("sum k|a_k|^2 grows under window doubling (windowed divergence)".into());
    }

    Ok(ClassReport {
        szego_sum: seq.as_ref().map(szego_sum),
        gi_sum: gi_sums,
        besov,
        index,
        index_radius,
        a2_constant: a2.map(|a| a.value),
        a2_constant_coarse: a2_coarse.map(|a| a.value),
        a2_stable,
        hankel_norm,
        w_inverse_integral,
        glm_max_column_norm,
        regularity_lhs: regularity.lhs,
        regularity_rhs: regularity.rhs,
        regular,
        hs_member,
        gi_member,
        diagnostics,
    })
}

/// One truncation of the non-uniqueness demo.
#[derive(Clone, Debug, Serialize)]
pub struct DemoRow {
    pub truncation: usize,
    /// `sup |s₁ − s₂|` outside the exclusion windows.
    pub sup_difference: f64,
    /// Grid `L²` norm of `s₁ − s₂`.
    pub l2_difference: f64,
    pub excluded_nodes: usize,
    pub first: ClassReport,
    pub second: ClassReport,
}

/// Forward-maps `a_n = −2/(n+3)` (weight `~|1 − t|⁴`) and `a_n = 2(−1)ⁿ/(n+3)`
/// (weight `~|1 + t|⁴`), both tending to `s = t²`, and classifies each.
pub fn nonunique_demo(
    truncations: &[usize],
    grid: CircleGrid,
    order: usize,
    radius: f64,
) -> Result<Vec<DemoRow>> {
    truncations
        .iter()
        .map(|&k| {
            let first = jacobi_sequence(2.0, 0.0, k)?;
            let second = jacobi_sequence(0.0, 2.0, k)?;
            let d1 = forward_scatter(&first, grid)?;
            let d2 = forward_scatter(&second, grid)?;
            let mask: Vec<bool> = d1
                .exclusion_mask()
                .into_iter()
                .zip(exclusion_mask(&d2.w, &d2.clamped))
                .map(|(a, b)| a || b)
                .collect();
            let sup_difference = sup_distance_excluding(&d1.s, &d2.s, &mask);
            let l2_difference = d1.s.zip_with(&d2.s, |a, b| a - b)?.l2_norm();
            let classify_one = |seq: VerblunskySeq| {
                let mut input = ClassifyInput::from_seq(seq, grid, order);
                input.radius = radius;
                classify(&input)
            };
            Ok(DemoRow {
                truncation: k,
                sup_difference,
                l2_difference,
                excluded_nodes: mask.iter().filter(|m| **m).count(),
                first: classify_one(first)?,
                second: classify_one(second)?,
            })
        })
        .collect()
}

/// The symbol `t²` sampled on `grid`.
pub fn monomial_symbol(grid: CircleGrid, power: i32) -> CircleFunction {
    CircleFunction::from_fn(grid, |t| t.powi(power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn besov_examples() {
        let g = CircleGrid::new(1024).unwrap();
        assert_eq!(
            besov_half_norm(&CircleFunction::from_fn(g, |_| c(1.0, 0.0)).coefficients()).value,
            0.0
        );
        let b = besov_half_norm(&monomial_symbol(g, 2).coefficients());
        assert_abs_diff_eq!(b.value, 2.0, epsilon = 1e-12);
        assert!(!b.divergent);

        let seq = VerblunskySeq::new(c(1.0, 0.0), vec![c(0.5, 0.0)]).unwrap();
        let v: Vec<f64> = [2048, 4096]
            .iter()
            .map(|&n| {
                let d = forward_scatter(&seq, CircleGrid::new(n).unwrap()).unwrap();
                besov_half_norm(&d.s.coefficients()).value
            })
            .collect();
        assert!((v[0] - v[1]).abs() <= 1e-8, "{v:?}");
    }

    #[test]
    fn besov_negative_part_is_hankel_frobenius() {
        // symbol with ŝ(−k) = 0 for k > 12: the order-12 Hankel sees every term once per anti-diagonal slot
        let g = CircleGrid::new(256).unwrap();
        let s = CircleFunction::from_fn(g, |t| {
            (1..=12)
                .map(|k| Complex64::new(1.0 / k as f64, 0.3) * t.powi(-k))
                .sum::<Complex64>()
        });
        let coeffs = s.coefficients();
        let h = hankel_from_symbol(&coeffs, 12).unwrap();
        assert_abs_diff_eq!(
            h.frobenius_sq(),
            besov_negative_part(&coeffs, 12),
            epsilon = 1e-12
        );
    }

    #[test]
    fn winding_examples() {
        let g = CircleGrid::new(1024).unwrap();
        assert_eq!(
            winding_index(&CircleFunction::from_fn(g, |_| c(1.0, 0.0)), 0.95)
                .unwrap()
                .index,
            0
        );
        assert_eq!(
            winding_index(&monomial_symbol(g, 2), 0.95).unwrap().index,
            2
        );
        let d = forward_scatter(
            &VerblunskySeq::new(c(0.0, 1.0), vec![c(0.6, 0.2), c(-0.3, 0.4)]).unwrap(),
            g,
        )
        .unwrap();
        assert_eq!(winding_index(&d.s, 0.95).unwrap().index, 0);
        assert!(winding_index(&CircleFunction::from_fn(g, |_| c(2.0, 0.0)), 0.95).is_err());
    }

    #[test]
    fn winding_retries_larger_radius() {
        // s = t̄·(t − 0.95)/(1 − 0.95 t): the extension at 0.95 nearly vanishes near t = 1
        let g = CircleGrid::new(2048).unwrap();
        let s = CircleFunction::from_fn(g, |t| (t - 0.95) / (1.0 - 0.95 * t) / t);
        let w = winding_index(&s, 0.95).unwrap();
        assert!(w.radius > 0.95);
        assert_eq!(w.index, 0);
    }

    #[test]
    fn a2_examples() {
        let flat = CircleFunction::from_fn(CircleGrid::new(256).unwrap(), |_| c(1.0, 0.0));
        assert_eq!(a2_constant(&flat).unwrap().value, 1.0);

        let scan = |n: usize, p: f64, scale: f64| {
            let g = CircleGrid::new(n).unwrap();
            a2_constant(&CircleFunction::from_fn(g, |t| {
                c((1.0 - t).norm().powf(p) / scale, 0.0)
            }))
            .unwrap()
        };
        let (a, b) = (scan(2048, 0.5, 1.0), scan(4096, 0.5, 1.0));
        assert_eq!(a.skipped, 1);
        assert!(b.value.is_finite() && (b.value - a.value) / a.value < 0.05);
        let (a, b) = (scan(2048, 4.0, 6.0), scan(4096, 4.0, 6.0));
        assert!(b.value > 4.0 * a.value, "{} {}", a.value, b.value);

        let neg = CircleFunction::from_fn(CircleGrid::new(64).unwrap(), |t| c(t.re, 0.0));
        assert!(a2_constant(&neg).is_err());
    }

    #[test]
    fn widom_examples() {
        let g = CircleGrid::new(4096).unwrap();
        let free = widom_det(&VerblunskySeq::free(c(-1.0, 0.0)).unwrap(), g, &[16]).unwrap();
        assert_eq!(free[0].det, 1.0);
        assert_eq!(free[0].product, 1.0);

        let rows = widom_det(&VerblunskySeq::real(&[0.5]).unwrap(), g, &[64, 256]).unwrap();
        assert_abs_diff_eq!(rows[1].product, 0.75, epsilon = 1e-15);
        assert!(rows[1].gap <= 1e-6);
        let rows = widom_det(
            &VerblunskySeq::real(&[0.5, 1.0 / 3.0]).unwrap(),
            g,
            &[64, 128, 256],
        )
        .unwrap();
        assert_abs_diff_eq!(
            rows[2].product,
            0.75 * (8.0f64 / 9.0).powi(2),
            epsilon = 1e-15
        );
        assert!(rows[2].gap <= 1e-6);
        assert!(rows[0].det >= rows[1].det - 1e-12 && rows[1].det >= rows[2].det - 1e-12);
        assert!(rows.iter().all(|r| r.det >= r.product - 1e-10));
        assert_eq!(WidomRow::csv_header(), "M,det,product,gap");
    }

    #[test]
    fn classify_free_case() {
        let g = CircleGrid::new(1024).unwrap();
        let rep = classify(&ClassifyInput::from_seq(
            VerblunskySeq::free(c(-1.0, 0.0)).unwrap(),
            g,
            64,
        ))
        .unwrap();
        assert!(rep.regular && rep.hs_member && rep.gi_member);
        assert_eq!(rep.index, Some(0));
        assert_eq!(rep.besov.value, 0.0);
        assert_eq!(rep.gi_sum.unwrap().value, 0.0);
        assert_eq!(rep.hankel_norm, 0.0);
        assert_eq!(rep.a2_constant, Some(1.0));
    }

    #[test]
    fn classify_monomial_symbol() {
        let g = CircleGrid::new(2048).unwrap();
        let rep = classify(&ClassifyInput::from_symbol(
            monomial_symbol(g, 2),
            None,
            128,
        ))
        .unwrap();
        assert_eq!(rep.index, Some(2));
        assert!(!rep.gi_member && !rep.hs_member && !rep.regular);
        let rep = classify(&ClassifyInput::from_symbol(
            monomial_symbol(g, 2),
            Some(1.0 / 6f64.sqrt()),
            128,
        ))
        .unwrap();
        assert!(!rep.regular);
        assert_abs_diff_eq!(
            rep.regularity_rhs / rep.regularity_lhs,
            6.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn classify_from_symbol_matches_sequence() {
        let g = CircleGrid::new(2048).unwrap();
        let seq = VerblunskySeq::real(&[0.5, 1.0 / 3.0]).unwrap();
        let data = forward_scatter(&seq, g).unwrap();
        let by_seq = classify(&ClassifyInput::from_seq(seq, g, 128)).unwrap();
        let by_s = classify(&ClassifyInput::from_symbol(data.s, None, 128)).unwrap();
        assert!(by_seq.gi_member && by_s.gi_member);
        assert_abs_diff_eq!(by_seq.regularity_lhs, by_s.regularity_lhs, epsilon = 1e-9);
        assert_abs_diff_eq!(
            by_seq.a2_constant.unwrap(),
            by_s.a2_constant.unwrap(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn gi_sum_windows() {
        let short = VerblunskySeq::real(&[0.5, 0.25]).unwrap();
        assert!(!gi_sum(&short).divergent);
        let slow = jacobi_sequence(0.25, 0.0, 200).unwrap();
        assert!(gi_sum(&slow).divergent);
        assert!(!szego_sum(&slow).divergent);
    }
}
