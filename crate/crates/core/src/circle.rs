//! Discrete harmonic analysis on the unit circle.
//!
//! Functions on 𝕋 are stored as samples on the `N`-th roots of unity
//! `t_j = exp(2πij/N)`. Fourier coefficients follow `ĝ(k) = (1/N) Σ_j g(t_j) t_j^{−k}`
//! for `k ∈ (−N/2, N/2]`. Analytic functions in the disk (or outside it) are
//! carried by their one-sided coefficient lists.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::io::{BufRead, Write};
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples below this are treated as zeros of the weight; `log w` is clamped here.
pub const LOG_CLAMP_FLOOR: f64 = 1e-300;
/// Samples below this raise the conditioning warning for outer functions.
pub const NEAR_ZERO_WARNING: f64 = 1e-14;
/// Largest imaginary part tolerated for functions that must be real-valued.
pub const REAL_TOLERANCE: f64 = 1e-10;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// `(1/N) Σ_j g_j e^{−2πijk/N}`, storage order `k = 0..N`.
fn dft_normalized(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    plan(n, false).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// `Σ_k c_k e^{2πijk/N}`, storage order in and out.
fn synthesize(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut buf = coeffs.to_vec();
    plan(buf.len(), true).process(&mut buf);
    buf
}

/// Uniform grid of `N` nodes on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleGrid {
    n: usize,
}

impl CircleGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::arg(format!(
                "grid size must be a power of two >= 16, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n as f64
    }

    pub fn node(&self, j: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.theta(j))
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// The grid with half as many nodes.
    pub fn coarsen(&self) -> Result<Self> {
        Self::new(self.n / 2)
    }

    /// Storage slot of frequency `k`, if `k ∈ (−N/2, N/2]`.
    pub(crate) fn slot(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k <= -half || k > half {
            return None;
        }
        Some(k.rem_euclid(self.n as i64) as usize)
    }

    /// Frequency carried by storage slot `i`.
    pub(crate) fn frequency(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }
}

/// Fourier coefficients `ĝ(k)`, `k ∈ (−N/2, N/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients {
    grid: CircleGrid,
    data: Vec<Complex64>,
}

impl Coefficients {
    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    /// `ĝ(k)`; zero outside the representable band.
    pub fn get(&self, k: i64) -> Complex64 {
        self.grid
            .slot(k)
            .map_or(Complex64::new(0.0, 0.0), |i| self.data[i])
    }

    /// Coefficients in storage order (`k = 0, 1, …, N/2, −N/2+1, …, −1`).
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// `(k, ĝ(k))` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let half = (self.grid.n / 2) as i64;
        (-half + 1..=half).map(move |k| (k, self.get(k)))
    }

    /// `[ĝ(−1), ĝ(−2), …, ĝ(−count)]`.
    pub fn negative(&self, count: usize) -> Vec<Complex64> {
        (1..=count as i64).map(|m| self.get(-m)).collect()
    }
}

/// Samples of a function on the grid, with lazily computed coefficients.
#[derive(Clone, Debug)]
pub struct CircleFunction {
    grid: CircleGrid,
    samples: Vec<Complex64>,
    coeffs: OnceLock<Vec<Complex64>>,
}

impl PartialEq for CircleFunction {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid && self.samples == other.samples
    }
}

impl CircleFunction {
    pub fn from_samples(grid: CircleGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.size() {
            return Err(Error::arg(format!(
                "expected {} samples, got {}",
                grid.size(),
                samples.len()
            )));
        }
        if samples
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::domain("non-finite sample"));
        }
        Ok(Self {
            grid,
            samples,
            coeffs: OnceLock::new(),
        })
    }

    pub fn from_real(grid: CircleGrid, values: &[f64]) -> Result<Self> {
        Self::from_samples(
            grid,
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Samples `f(t_j)`; `f` must be finite on every node.
    pub fn from_fn(grid: CircleGrid, f: impl Fn(Complex64) -> Complex64) -> Self {
        let samples = (0..grid.size()).map(|j| f(grid.node(j))).collect();
        Self {
            grid,
            samples,
            coeffs: OnceLock::new(),
        }
    }

    /// Synthesis from coefficients.
    pub fn from_coeffs(coeffs: &Coefficients) -> Self {
        let samples = synthesize(&coeffs.data);
        let lock = OnceLock::new();
        let _ = lock.set(coeffs.data.clone());
        Self {
            grid: coeffs.grid,
            samples,
            coeffs: lock,
        }
    }

    pub(crate) fn from_storage_coeffs(grid: CircleGrid, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), grid.size());
        Self::from_coeffs(&Coefficients { grid, data })
    }

    pub fn grid(&self) -> CircleGrid {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Coefficients in storage order.
    pub fn coeffs(&self) -> &[Complex64] {
        self.coeffs.get_or_init(|| dft_normalized(&self.samples))
    }

    pub fn coefficients(&self) -> Coefficients {
        Coefficients {
            grid: self.grid,
            data: self.coeffs().to_vec(),
        }
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.grid
            .slot(k)
            .map_or(Complex64::new(0.0, 0.0), |i| self.coeffs()[i])
    }

    /// `∫ g dm` on the grid.
    pub fn mean(&self) -> Complex64 {
        self.coeff(0)
    }

    pub fn max_imag(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.re).collect()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|&z| f(z)).collect(),
            coeffs: OnceLock::new(),
        }
    }

    /// Pointwise map with access to the node `t_j`.
    pub fn map_with_node(&self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(j, &z)| f(self.grid.node(j), z))
            .collect();
        Self {
            grid: self.grid,
            samples,
            coeffs: OnceLock::new(),
        }
    }

    pub fn zip_with(
        &self,
        other: &CircleFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::arg("grid mismatch"));
        }
        Ok(Self {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            coeffs: OnceLock::new(),
        })
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Root-mean-square over the grid, i.e. the discrete `L²(dm)` norm.
    pub fn l2_norm(&self) -> f64 {
        (self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.len() as f64).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Samples of the Poisson (harmonic) extension at radius `r`:
    /// `Σ_k ĝ(k) r^{|k|} t^k`.
    pub fn poisson_extension(&self, r: f64) -> Self {
        let data = self
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| c * r.powi(self.grid.frequency(i).unsigned_abs() as i32))
            .collect();
        Self::from_storage_coeffs(self.grid, data)
    }

    /// Writes `index,theta,re,im` rows at 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W, comment: Option<&str>) -> Result<()> {
        if let Some(c) = comment {
            for line in c.lines() {
                writeln!(out, "# {line}")?;
            }
        }
        writeln!(out, "index,theta,re,im")?;
        for (j, z) in self.samples.iter().enumerate() {
            writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e}",
                j,
                self.grid.theta(j),
                z.re,
                z.im
            )?;
        }
        Ok(())
    }

    /// Reads the format produced by [`CircleFunction::write_csv`]; `#` lines
    /// and the header row are skipped.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut samples = Vec::new();
        let mut thetas = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("index") {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!(
                    "line {}: expected 4 fields, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let index: usize = fields[0]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if index != samples.len() {
                return Err(Error::Parse(format!(
                    "line {}: index {index} out of order",
                    lineno + 1
                )));
            }
            thetas.push(parse(fields[1])?);
            samples.push(Complex64::new(parse(fields[2])?, parse(fields[3])?));
        }
        let grid = CircleGrid::new(samples.len())?;
        for (j, th) in thetas.iter().enumerate() {
            if (th - grid.theta(j)).abs() > 1e-12 {
                return Err(Error::Parse(format!("theta at index {j} is off-grid")));
            }
        }
        Self::from_samples(grid, samples)
    }
}

/// `ĝ(k)` for all representable `k`.
pub fn fourier_coeffs(f: &CircleFunction) -> Coefficients {
    f.coefficients()
}

fn require_real(u: &CircleFunction, what: &str) -> Result<()> {
    let im = u.max_imag();
    if im > REAL_TOLERANCE {
        return Err(Error::domain(format!(
            "{what} must be real-valued (max |Im| = {im:.3e})"
        )));
    }
    Ok(())
}

/// Harmonic conjugate `ũ`: multiplier `−i·sign(k)`, with `ũ^(0) = 0` and the
/// Nyquist frequency dropped.
pub fn conjugate_function(u: &CircleFunction) -> Result<CircleFunction> {
    require_real(u, "conjugate_function input")?;
    let grid = u.grid();
    let half = grid.size() / 2;
    let data = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| match grid.frequency(i) {
            k if k > 0 && i != half => c * Complex64::new(0.0, -1.0),
            k if k < 0 => c * Complex64::new(0.0, 1.0),
            _ => Complex64::new(0.0, 0.0),
        })
        .collect();
    let v = CircleFunction::from_storage_coeffs(grid, data);
    Ok(v.map(|z| Complex64::new(z.re, 0.0)))
}

/// Which side of the circle a [`DiskFunction`] is analytic on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `f(z) = Σ_{k≥0} c_k z^k`, `|z| < 1`.
    Interior,
    /// `f(z) = Σ_{k≥0} c_k z^{−(k+1)}`, `|z| > 1`, `f(∞) = 0`.
    Exterior,
}

/// Analytic function on one side of 𝕋, held as a one-sided coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskFunction {
    side: Side,
    coeffs: Vec<Complex64>,
}

impl DiskFunction {
    pub fn interior(coeffs: Vec<Complex64>) -> Self {
        Self {
            side: Side::Interior,
            coeffs,
        }
    }

    pub fn exterior(coeffs: Vec<Complex64>) -> Self {
        Self {
            side: Side::Exterior,
            coeffs,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::interior(vec![c])
    }

    /// Projection of boundary data onto one side: frequencies `0..N/2` for
    /// the interior, `−1, …, −(N/2 − 1)` for the exterior.
    pub fn from_boundary(f: &CircleFunction, side: Side) -> Self {
        let half = f.len() / 2;
        let coeffs = match side {
            Side::Interior => (0..half as i64).map(|k| f.coeff(k)).collect(),
            Side::Exterior => (1..half as i64).map(|m| f.coeff(-m)).collect(),
        };
        Self { side, coeffs }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation; for the exterior side the series is in `1/z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self.side {
            Side::Interior => horner(&self.coeffs, z),
            Side::Exterior => {
                let w = z.inv();
                w * horner(&self.coeffs, w)
            }
        }
    }

    /// `f(0)` for interior functions, `(z f)(∞)` for exterior ones.
    pub fn leading(&self) -> Complex64 {
        self.coeffs.first().copied().unwrap_or_default()
    }

    pub(crate) fn set_leading(&mut self, c: Complex64) {
        match self.coeffs.first_mut() {
            Some(slot) => *slot = c,
            None => self.coeffs.push(c),
        }
    }

    /// `f'(0)` for interior functions.
    pub fn derivative_at_zero(&self) -> Complex64 {
        match self.side {
            Side::Interior => self.coeffs.get(1).copied().unwrap_or_default(),
            Side::Exterior => Complex64::new(0.0, 0.0),
        }
    }

    /// Boundary values on `grid`; coefficients beyond the band are dropped.
    pub fn boundary(&self, grid: CircleGrid) -> CircleFunction {
        let n = grid.size();
        let mut data = vec![Complex64::new(0.0, 0.0); n];
        match self.side {
            Side::Interior => {
                for (k, &c) in self.coeffs.iter().enumerate().take(n / 2) {
                    data[k] = c;
                }
            }
            Side::Exterior => {
                for (k, &c) in self.coeffs.iter().enumerate().take(n / 2 - 1) {
                    data[n - 1 - k] = c;
                }
            }
        }
        CircleFunction::from_storage_coeffs(grid, data)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Outer function `O` with `|O|² = w` on the grid and `O(0) > 0`.
#[derive(Clone, Debug)]
pub struct OuterFunction {
    pub disk: DiskFunction,
    pub boundary: CircleFunction,
    pub value_at_origin: f64,
    /// Nodes where `log w` hit the clamp floor.
    pub clamped: Vec<usize>,
    /// Some sample fell below [`NEAR_ZERO_WARNING`].
    pub near_zero: bool,
}

/// `O(z) = exp(½ ∫ (t+z)/(t−z) log w dm)`, computed in the log domain.
pub fn outer_from_modulus_squared(w: &CircleFunction) -> Result<OuterFunction> {
    require_real(w, "weight")?;
    let grid = w.grid();
    let n = grid.size();
    let mut clamped = Vec::new();
    let mut near_zero = false;
    let mut logw = Vec::with_capacity(n);
    for (j, z) in w.samples().iter().enumerate() {
        let x = z.re;
        if x < 0.0 {
            return Err(Error::domain(format!(
                "weight is negative at node {j} ({x:.3e})"
            )));
        }
        if x < NEAR_ZERO_WARNING {
            near_zero = true;
        }
        if x < LOG_CLAMP_FLOOR {
            clamped.push(j);
        }
        logw.push(x.max(LOG_CLAMP_FLOOR).ln());
    }
    let logw = CircleFunction::from_real(grid, &logw)?;
    let c = logw.coeffs();
    let half = n / 2;
    let mut log_outer = vec![Complex64::new(0.0, 0.0); n];
    log_outer[0] = Complex64::new(c[0].re / 2.0, 0.0);
    log_outer[1..half].copy_from_slice(&c[1..half]);
    // Half the Nyquist term keeps Re log O = ½ log w exactly on the nodes.
    log_outer[half] = Complex64::new(c[half].re / 2.0, 0.0);
    let boundary = CircleFunction::from_storage_coeffs(grid, log_outer).map(|z| z.exp());
    let value_at_origin = (c[0].re / 2.0).exp();
    let mut disk = DiskFunction::from_boundary(&boundary, Side::Interior);
    disk.set_leading(Complex64::new(value_at_origin, 0.0));
    Ok(OuterFunction {
        disk,
        boundary,
        value_at_origin,
        clamped,
        near_zero,
    })
}

/// Herglotz (Carathéodory) transform `R(z) = ŵ(0) + 2 Σ_{k≥1} ŵ(k) z^k` of a
/// density.
pub fn herglotz_from_density(w: &CircleFunction) -> Result<DiskFunction> {
    require_real(w, "density")?;
    if let Some((j, z)) = w.samples().iter().enumerate().find(|(_, z)| z.re < -1e-12) {
        return Err(Error::domain(format!(
            "density is negative at node {j} ({:.3e})",
            z.re
        )));
    }
    let half = w.len() / 2;
    let mut coeffs: Vec<Complex64> = (0..half as i64).map(|k| 2.0 * w.coeff(k)).collect();
    coeffs[0] = Complex64::new(w.coeff(0).re, 0.0);
    Ok(DiskFunction::interior(coeffs))
}
