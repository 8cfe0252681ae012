//! Forward scattering: Szegő function, scattering function, `φ`/`ψ` and the
//! reproducing kernels at `0` and `∞`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::{outer_from_modulus_squared, CircleFunction, CircleGrid, DiskFunction, Side};
use crate::error::{Error, Result};
use crate::opuc::{caratheodory_boundary, LaurentBasis, VerblunskySeq};

/// Half-width of the node window excluded around near-zeros of `w`.
pub const CLAMP_WINDOW: usize = 3;
/// Local minima of `w` below this level open an exclusion window.
pub const NEAR_ZERO_LEVEL: f64 = 1e-6;

/// Output of the forward map.
#[derive(Clone, Debug)]
pub struct ScatteringData {
    pub a_minus1: Complex64,
    /// Spectral density `w = Re R`.
    pub w: CircleFunction,
    /// Boundary values of the Carathéodory function `R`.
    pub caratheodory: CircleFunction,
    /// Szegő function `D` (Taylor coefficients).
    pub d: DiskFunction,
    pub d_boundary: CircleFunction,
    /// `D_* = conj(D)` on the circle.
    pub d_star: CircleFunction,
    /// `s = −a₋₁·D/D_*`.
    pub s: CircleFunction,
    pub d0: f64,
    /// `w` fell below the conditioning threshold somewhere.
    pub near_zero: bool,
    pub clamped: Vec<usize>,
}

pub fn forward_scatter(seq: &VerblunskySeq, grid: CircleGrid) -> Result<ScatteringData> {
    let caratheodory = caratheodory_boundary(seq, grid);
    let w = caratheodory.map(|z| Complex64::new(z.re, 0.0));
    let outer = outer_from_modulus_squared(&w)?;
    let d_star = outer.boundary.conj();
    let a_minus1 = seq.a_minus1();
    let s = outer
        .boundary
        .zip_with(&d_star, |d, ds| -a_minus1 * d / ds)?;
    Ok(ScatteringData {
        a_minus1,
        w,
        caratheodory,
        d: outer.disk,
        d_boundary: outer.boundary,
        d_star,
        s,
        d0: outer.value_at_origin,
        near_zero: outer.near_zero,
        clamped: outer.clamped,
    })
}

impl ScatteringData {
    pub fn grid(&self) -> CircleGrid {
        self.s.grid()
    }

    /// `max_j ||s(t_j)| − 1|`.
    pub fn unimodularity_residual(&self) -> f64 {
        self.s
            .samples()
            .iter()
            .fold(0.0, |m, z| m.max((z.norm() - 1.0).abs()))
    }

    /// `max_j |s·D_* + a₋₁·D|`.
    pub fn representation_residual(&self) -> f64 {
        self.s
            .samples()
            .iter()
            .zip(self.d_star.samples())
            .zip(self.d_boundary.samples())
            .fold(0.0, |m, ((s, ds), d)| {
                m.max((s * ds + self.a_minus1 * d).norm())
            })
    }

    /// Nodes excluded from sup-norm comparisons: clamped nodes and local
    /// minima of `w` below [`NEAR_ZERO_LEVEL`], each widened by
    /// [`CLAMP_WINDOW`] nodes on both sides.
    pub fn exclusion_mask(&self) -> Vec<bool> {
        exclusion_mask(&self.w, &self.clamped)
    }

    pub fn sidecar(&self, config: Option<serde_json::Value>) -> Sidecar {
        Sidecar {
            a_minus1: self.a_minus1,
            d0: self.d0,
            config,
        }
    }
}

pub fn exclusion_mask(w: &CircleFunction, clamped: &[usize]) -> Vec<bool> {
    let n = w.len();
    let vals = w.real_parts();
    let mut centers: Vec<usize> = clamped.to_vec();
    for j in 0..n {
        let prev = vals[(j + n - 1) % n];
        let next = vals[(j + 1) % n];
        if vals[j] < NEAR_ZERO_LEVEL && vals[j] <= prev && vals[j] <= next {
            centers.push(j);
        }
    }
    let mut mask = vec![false; n];
    for c in centers {
        for d in 0..=2 * CLAMP_WINDOW {
            mask[(c + n + d - CLAMP_WINDOW) % n] = true;
        }
    }
    mask
}

/// `max |f − g|` over nodes not excluded by `mask`.
pub fn sup_distance_excluding(f: &CircleFunction, g: &CircleFunction, mask: &[bool]) -> f64 {
    f.samples()
        .iter()
        .zip(g.samples())
        .zip(mask)
        .filter(|(_, &skip)| !skip)
        .fold(0.0, |m, ((a, b), _)| m.max((a - b).norm()))
}

/// JSON written next to the `s` CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub a_minus1: Complex64,
    #[serde(rename = "D0")]
    pub d0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
}

/// Schur function `φ` (with `φ(0) = 0`) and its outer complement `ψ`.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    pub phi: DiskFunction,
    pub phi_boundary: CircleFunction,
    pub psi: DiskFunction,
    pub psi_boundary: CircleFunction,
    pub psi0: f64,
}

impl PhiPsi {
    /// `max_j ||φ|² + |ψ|² − 1|`.
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

/// `φ = ā₋₁(R(0) − R)/(R(0) + R)` and the outer `ψ` with `|ψ|² = 1 − |φ|²`.
pub fn phi_from_r(r: &DiskFunction, a_minus1: Complex64, grid: CircleGrid) -> Result<PhiPsi> {
    if r.side() != Side::Interior {
        return Err(Error::arg(
            "Carathéodory function must be analytic in the disk",
        ));
    }
    let r0 = r.leading();
    if (r0 - 1.0).norm() > 1e-8 {
        return Err(Error::arg(format!("R(0) must be 1, got {r0}")));
    }
    phi_from_boundary(&r.boundary(grid), r0, a_minus1)
}

pub(crate) fn phi_from_boundary(
    r_boundary: &CircleFunction,
    r0: Complex64,
    a_minus1: Complex64,
) -> Result<PhiPsi> {
    if let Some(j) = r_boundary
        .samples()
        .iter()
        .position(|&rv| (r0 + rv).norm() < 1e-14)
    {
        return Err(Error::Numerical(format!("R(0) + R vanishes at node {j}")));
    }
    let phi_boundary = r_boundary.map(|rv| a_minus1.conj() * (r0 - rv) / (r0 + rv));
    let mut phi = DiskFunction::from_boundary(&phi_boundary, Side::Interior);
    phi.set_leading(Complex64::new(0.0, 0.0));
    let slack = phi_boundary.map(|p| Complex64::new((1.0 - p.norm_sqr()).max(0.0), 0.0));
    let outer = outer_from_modulus_squared(&slack)?;
    Ok(PhiPsi {
        phi,
        phi_boundary,
        psi: outer.disk,
        psi_boundary: outer.boundary,
        psi0: outer.value_at_origin,
    })
}

impl ScatteringData {
    /// `φ`, `ψ` of this spectral data.
    pub fn phi_psi(&self) -> Result<PhiPsi> {
        phi_from_boundary(&self.caratheodory, Complex64::new(1.0, 0.0), self.a_minus1)
    }
}

/// A kernel `(F₁, F₂)`: `F₁` analytic in the disk, `F₂` analytic outside and
/// vanishing at `∞`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub analytic: DiskFunction,
    pub coanalytic: DiskFunction,
}

impl Kernel {
    pub fn boundary(&self, grid: CircleGrid) -> (CircleFunction, CircleFunction) {
        (self.analytic.boundary(grid), self.coanalytic.boundary(grid))
    }
}

/// Reproducing kernels at `0` and `∞`.
#[derive(Clone, Debug)]
pub struct KernelPair {
    pub k0: Kernel,
    pub kinf: Kernel,
}

impl KernelPair {
    /// `(𝒦_∞)₁(0)/(𝒦₀)₁(0)`, which equals `ā₀`.
    pub fn ratio_at_zero(&self) -> Complex64 {
        self.kinf.analytic.leading() / self.k0.analytic.leading()
    }

    /// `z·(𝒦_∞)₁/(𝒦₀)₁` on the grid; reproduces `φ`.
    pub fn phi_boundary(&self, grid: CircleGrid) -> CircleFunction {
        let num = self.kinf.analytic.boundary(grid);
        let den = self.k0.analytic.boundary(grid);
        num.zip_with(&den, |a, b| a / b)
            .expect("same grid")
            .map_with_node(|t, q| t * q)
    }
}

/// `⟨F, G⟩ = ∫ (sF₁ + F₂) conj(sG₁ + G₂) dm`.
pub fn scattering_inner(s: &CircleFunction, f: &Kernel, g: &Kernel) -> Complex64 {
    let grid = s.grid();
    let (f1, f2) = f.boundary(grid);
    let (g1, g2) = g.boundary(grid);
    let n = grid.size();
    (0..n)
        .map(|j| {
            let sj = s.samples()[j];
            let a = sj * f1.samples()[j] + f2.samples()[j];
            let b = sj * g1.samples()[j] + g2.samples()[j];
            a * b.conj()
        })
        .sum::<Complex64>()
        / n as f64
}

/// Kernels built from `R`, `D` and `a₋₁` alone (no Hankel solves).
pub fn kernels_from_spectral(
    r: &DiskFunction,
    d: &DiskFunction,
    a_minus1: Complex64,
    grid: CircleGrid,
) -> Result<KernelPair> {
    let r0 = r.leading();
    let d0 = d.leading().re;
    if !(d0 > 0.0) {
        return Err(Error::arg("D(0) must be positive"));
    }
    let rb = r.boundary(grid);
    let db = d.boundary(grid);
    if let Some(j) = db.samples().iter().position(|z| z.norm() < 1e-150) {
        return Err(Error::Numerical(format!("D vanishes at node {j}")));
    }
    let nodes = grid.nodes();
    let n = grid.size();
    let mut k01 = Vec::with_capacity(n);
    let mut k02 = Vec::with_capacity(n);
    let mut ki1 = Vec::with_capacity(n);
    let mut ki2 = Vec::with_capacity(n);
    for j in 0..n {
        let (t, rv, dv) = (nodes[j], rb.samples()[j], db.samples()[j]);
        let ds = dv.conj();
        k01.push((r0 + rv) / (2.0 * dv * d0));
        k02.push(a_minus1 * (r0 - rv.conj()) / (2.0 * ds * d0));
        ki1.push(a_minus1.conj() * (r0 - rv) / (2.0 * t * dv * d0));
        ki2.push((r0 + rv.conj()) / (2.0 * t * ds * d0));
    }
    let project = |v: Vec<Complex64>, side| {
        CircleFunction::from_samples(grid, v).map(|f| DiskFunction::from_boundary(&f, side))
    };
    Ok(KernelPair {
        k0: Kernel {
            analytic: project(k01, Side::Interior)?,
            coanalytic: project(k02, Side::Exterior)?,
        },
        kinf: Kernel {
            analytic: project(ki1, Side::Interior)?,
            coanalytic: project(ki2, Side::Exterior)?,
        },
    })
}

/// Grid `L²` residuals of `t^{−n} D_* P_{2n} → 1` and `t^{n+1} D P_{2n+1} → −ā₋₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SzegoResidual {
    pub n: usize,
    pub even: f64,
    pub odd: f64,
}

pub fn szego_asymptotics_residual(
    data: &ScatteringData,
    basis: &LaurentBasis,
    ns: &[usize],
) -> Result<Vec<SzegoResidual>> {
    let grid = data.grid();
    let target = -data.a_minus1.conj();
    ns.iter()
        .map(|&n| {
            if 2 * n + 1 >= basis.values.len() {
                return Err(Error::arg(format!(
                    "basis of size {} does not reach P_{}",
                    basis.values.len(),
                    2 * n + 1
                )));
            }
            let even = &basis.values[2 * n];
            let odd = &basis.values[2 * n + 1];
            let mut acc_e = 0.0;
            let mut acc_o = 0.0;
            for j in 0..grid.size() {
                let t = grid.node(j);
                let e = t.powi(-(n as i32)) * data.d_star.samples()[j] * even.samples()[j] - 1.0;
                let o =
                    t.powi(n as i32 + 1) * data.d_boundary.samples()[j] * odd.samples()[j] - target;
                acc_e += e.norm_sqr();
                acc_o += o.norm_sqr();
            }
            let m = grid.size() as f64;
            Ok(SzegoResidual {
                n,
                even: (acc_e / m).sqrt(),
                odd: (acc_o / m).sqrt(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opuc::{jacobi_sequence, laurent_basis, schur_caratheodory};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> CircleGrid {
        CircleGrid::new(1024).unwrap()
    }

    #[test]
    fn free_case_gives_constant_symbol() {
        let data = forward_scatter(&VerblunskySeq::free(c(-1.0, 0.0)).unwrap(), grid()).unwrap();
        assert!(data.s.samples().iter().all(|z| (z - 1.0).norm() < 1e-14));
        assert_abs_diff_eq!(data.d0, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn single_coefficient_closed_form() {
        let g = grid();
        // a₋₁ = −1: D = (√3/2)/(1 − z/2)
        let data = forward_scatter(&VerblunskySeq::real(&[0.5]).unwrap(), g).unwrap();
        for (j, t) in g.nodes().into_iter().enumerate() {
            let d = (3f64.sqrt() / 2.0) / (1.0 - t / 2.0);
            assert_abs_diff_eq!(
                (data.d_boundary.samples()[j] - d).norm(),
                0.0,
                epsilon = 1e-12
            );
            let s = (t - 0.5) / (t * (1.0 - t / 2.0));
            assert_abs_diff_eq!((data.s.samples()[j] - s).norm(), 0.0, epsilon = 1e-12);
        }
        // a₋₁ = 1 gives the reflected weight and s = −(t + 1/2)/(t(1 + t/2))
        let data = forward_scatter(
            &VerblunskySeq::new(c(1.0, 0.0), vec![c(0.5, 0.0)]).unwrap(),
            g,
        )
        .unwrap();
        for (j, t) in g.nodes().into_iter().enumerate() {
            let s = -(t + 0.5) / (t * (1.0 + t / 2.0));
            assert_abs_diff_eq!((data.s.samples()[j] - s).norm(), 0.0, epsilon = 1e-12);
        }
        assert!(data.unimodularity_residual() < 1e-12);
        assert!(data.representation_residual() < 1e-12);
    }

    #[test]
    fn jacobi_pair_gives_nearly_t_squared() {
        let g = CircleGrid::new(4096).unwrap();
        let data = forward_scatter(&jacobi_sequence(2.0, 0.0, 200).unwrap(), g).unwrap();
        let t2 = CircleFunction::from_fn(g, |t| t * t);
        let far: Vec<bool> = (0..g.size())
            .map(|j| g.theta(j).cos() > 0.5) // keep |θ| > π/3
            .collect();
        assert!(sup_distance_excluding(&data.s, &t2, &far) < 0.08);
        assert!(data.near_zero || data.w.samples()[0].re < 1e-6);
        assert!(data.exclusion_mask()[0]);
    }

    #[test]
    fn phi_psi_examples() {
        let g = grid();
        let p = phi_from_r(&DiskFunction::constant(c(1.0, 0.0)), c(1.0, 0.0), g).unwrap();
        assert!(p.phi_boundary.sup_norm() < 1e-15);
        assert_abs_diff_eq!(p.psi0, 1.0, epsilon = 1e-15);

        let seq = VerblunskySeq::new(c(1.0, 0.0), vec![c(0.5, 0.0)]).unwrap();
        let r = schur_caratheodory(&seq, g);
        let p = phi_from_r(&r, seq.a_minus1(), g).unwrap();
        // φ = z·ā₀ independently of a₋₁
        for z in [c(0.3, 0.1), c(-0.5, 0.5)] {
            assert_abs_diff_eq!((p.phi.eval(z) - z / 2.0).norm(), 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(p.psi0, 3f64.sqrt() / 2.0, epsilon = 1e-12);
        let data = forward_scatter(&seq, g).unwrap();
        for j in 0..g.size() {
            let d =
                p.psi_boundary.samples()[j] / (1.0 + seq.a_minus1() * p.phi_boundary.samples()[j]);
            assert_abs_diff_eq!(
                (d - data.d_boundary.samples()[j]).norm(),
                0.0,
                epsilon = 1e-10
            );
        }
        assert!(p.pythagoras_residual() < 1e-12);
    }

    #[test]
    fn phi_psi_for_quartic_weight() {
        let g = CircleGrid::new(4096).unwrap();
        let w = CircleFunction::from_fn(g, |t| c((1.0 - t).norm_sqr().powi(2) / 6.0, 0.0));
        let r = crate::circle::herglotz_from_density(&w).unwrap();
        let p = phi_from_r(&r, c(1.0, 0.0), g).unwrap();
        assert!(p.phi.leading().norm() < 1e-10);
        assert!(p.pythagoras_residual() < 1e-8);
    }

    #[test]
    fn kernel_examples() {
        let g = grid();
        let free = VerblunskySeq::free(c(-1.0, 0.0)).unwrap();
        let data = forward_scatter(&free, g).unwrap();
        let k = kernels_from_spectral(&schur_caratheodory(&free, g), &data.d, free.a_minus1(), g)
            .unwrap();
        assert_abs_diff_eq!((k.k0.analytic.leading() - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert!(k.k0.coanalytic.coeffs().iter().all(|z| z.norm() < 1e-15));
        assert!(k.kinf.analytic.coeffs().iter().all(|z| z.norm() < 1e-15));
        assert_abs_diff_eq!(
            (k.kinf.coanalytic.leading() - 1.0).norm(),
            0.0,
            epsilon = 1e-15
        );

        for a in [vec![c(0.5, 0.0)], vec![c(0.5, 0.0), c(1.0 / 3.0, 0.0)]] {
            for am1 in [c(1.0, 0.0), c(-1.0, 0.0), Complex64::from_polar(1.0, 2.0)] {
                let seq = VerblunskySeq::new(am1, a.clone()).unwrap();
                let data = forward_scatter(&seq, g).unwrap();
                let k =
                    kernels_from_spectral(&schur_caratheodory(&seq, g), &data.d, am1, g).unwrap();
                assert_abs_diff_eq!((k.ratio_at_zero() - 0.5).norm(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn kernels_reproduce_point_values() {
        let g = grid();
        let seq = VerblunskySeq::new(
            Complex64::from_polar(1.0, 0.7),
            vec![c(0.3, -0.2), c(0.1, 0.4)],
        )
        .unwrap();
        let data = forward_scatter(&seq, g).unwrap();
        let k = kernels_from_spectral(&schur_caratheodory(&seq, g), &data.d, seq.a_minus1(), g)
            .unwrap();
        let ip = |f: &Kernel, h: &Kernel| scattering_inner(&data.s, f, h);
        // ⟨F, 𝒦₀⟩ = F₁(0), ⟨F, 𝒦_∞⟩ = (tF₂)(∞)
        assert_abs_diff_eq!(
            (ip(&k.k0, &k.k0) - k.k0.analytic.leading()).norm(),
            0.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            (ip(&k.kinf, &k.k0) - k.kinf.analytic.leading()).norm(),
            0.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            (ip(&k.k0, &k.kinf) - k.k0.coanalytic.leading()).norm(),
            0.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            (ip(&k.kinf, &k.kinf) - k.kinf.coanalytic.leading()).norm(),
            0.0,
            epsilon = 1e-10
        );
        // z(𝒦_∞)₁/(𝒦₀)₁ = φ
        let p = data.phi_psi().unwrap();
        let ratio = k.phi_boundary(g);
        for j in 0..g.size() {
            assert_abs_diff_eq!(
                (ratio.samples()[j] - p.phi_boundary.samples()[j]).norm(),
                0.0,
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn szego_asymptotics_examples() {
        let g = grid();
        let free = VerblunskySeq::free(c(0.0, 1.0)).unwrap();
        let data = forward_scatter(&free, g).unwrap();
        let basis = laurent_basis(&free, 8, &data.w).unwrap();
        for r in szego_asymptotics_residual(&data, &basis, &[0, 1, 2, 3]).unwrap() {
            assert!(r.even < 1e-14 && r.odd < 1e-14);
        }

        let seq = VerblunskySeq::new(c(1.0, 0.0), vec![c(0.5, 0.0)]).unwrap();
        let data = forward_scatter(&seq, g).unwrap();
        let basis = laurent_basis(&seq, 8, &data.w).unwrap();
        let r = szego_asymptotics_residual(&data, &basis, &[2]).unwrap();
        assert!(r[0].even <= 1e-10 && r[0].odd <= 1e-10);

        let seq = VerblunskySeq::real(&[0.5, 1.0 / 3.0, 0.25]).unwrap();
        let data = forward_scatter(&seq, g).unwrap();
        let basis = laurent_basis(&seq, 12, &data.w).unwrap();
        let rs = szego_asymptotics_residual(&data, &basis, &[0, 1, 2, 3, 4, 5]).unwrap();
        for pair in rs.windows(2) {
            assert!(pair[1].even <= pair[0].even + 1e-14);
            assert!(pair[1].odd <= pair[0].odd + 1e-14);
        }
        for r in rs.iter().filter(|r| r.n >= 3) {
            assert!(r.even <= 1e-10 && r.odd <= 1e-10, "{r:?}");
        }
        assert!(szego_asymptotics_residual(&data, &basis, &[6]).is_err());
    }

    #[test]
    fn sidecar_json_shape() {
        let data = forward_scatter(&VerblunskySeq::real(&[0.5]).unwrap(), grid()).unwrap();
        let text = serde_json::to_string(&data.sidecar(None)).unwrap();
        assert!(text.starts_with(r#"{"a_minus1":[-1.0,0.0],"D0":0.866025403784438"#));
        let back: Sidecar = serde_json::from_str(&text).unwrap();
        assert_eq!(back.d0, data.d0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn unimodular_and_rotation_covariant(
                a in proptest::collection::vec((0.0..0.5f64, 0.0..6.3f64), 0..5),
                phase in 0.0..6.3f64,
                rot in 0.0..6.3f64,
            ) {
                let g = CircleGrid::new(4096).unwrap();
                let a: Vec<Complex64> = a.into_iter().map(|(r, p)| Complex64::from_polar(r, p)).collect();
                let seq = VerblunskySeq::new(Complex64::from_polar(1.0, phase), a.clone()).unwrap();
                let data = forward_scatter(&seq, g).unwrap();
                prop_assert!(data.unimodularity_residual() <= 1e-8);
                prop_assert!(data.representation_residual() <= 1e-8);
                let p = data.phi_psi().unwrap();
                prop_assert!(p.pythagoras_residual() <= 1e-8);
                prop_assert!(p.phi_boundary.sup_norm() <= 1.0 + 1e-8);
                for j in 0..g.size() {
                    let d = p.psi_boundary.samples()[j] / (1.0 + seq.a_minus1() * p.phi_boundary.samples()[j]);
                    prop_assert!((d - data.d_boundary.samples()[j]).norm() <= 1e-8);
                }
                // rotating (a₋₁, a) jointly by c multiplies s by c
                let c = Complex64::from_polar(1.0, rot);
                let rotated = VerblunskySeq::new(seq.a_minus1() * c, a.iter().map(|z| z * c).collect()).unwrap();
                let data2 = forward_scatter(&rotated, g).unwrap();
                for (x, y) in data.s.samples().iter().zip(data2.s.samples()) {
                    prop_assert!((x * c - y).norm() <= 1e-10);
                }
                for k in -20..20i64 {
                    prop_assert!((data.s.coeff(k).norm() - data2.s.coeff(k).norm()).abs() <= 1e-12);
                }
            }
        }
    }
}
