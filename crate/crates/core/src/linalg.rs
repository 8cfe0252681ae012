//! Dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub(crate) type CMatrix = DMatrix<Complex64>;
pub(crate) type CVector = DVector<Complex64>;

pub(crate) fn unit(n: usize, i: usize) -> CVector {
    let mut e = CVector::zeros(n);
    e[i] = Complex64::new(1.0, 0.0);
    e
}

type Chol = nalgebra::Cholesky<Complex64, nalgebra::Dyn>;

/// Cholesky factor with a strictly positive real diagonal. nalgebra takes
/// complex square roots of the pivots, so a negative pivot does not fail there.
fn factor(a: CMatrix) -> Option<Chol> {
    let chol = a.cholesky()?;
    let l = chol.l_dirty();
    let ok = (0..l.nrows()).all(|i| {
        let d = l[(i, i)];
        d.re > 0.0 && d.re.is_finite() && d.im.abs() <= 1e-12 * d.re
    });
    ok.then_some(chol)
}

/// Solves `A x = b` for Hermitian positive-definite `A`; `None` if the
/// Cholesky factorization breaks down.
pub(crate) fn hpd_solve(a: CMatrix, b: &CVector) -> Option<CVector> {
    let x = factor(a)?.solve(b);
    x.iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
        .then_some(x)
}

/// Inverse of a Hermitian positive-definite matrix.
pub(crate) fn hpd_inverse(a: CMatrix) -> Option<CMatrix> {
    Some(factor(a)?.inverse())
}

/// `log det A` for Hermitian positive-definite `A`.
pub(crate) fn hpd_log_det(a: CMatrix) -> Option<f64> {
    let chol = factor(a)?;
    let l = chol.l_dirty();
    Some((0..l.nrows()).map(|i| 2.0 * l[(i, i)].re.ln()).sum())
}

/// Largest singular value, from the top eigenvalue of `A*A`.
pub(crate) fn sigma_max(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let top = gram(a)
        .symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |m, &l| m.max(l));
    top.max(0.0).sqrt()
}

/// `AB` through four real products; nalgebra multiplies complex matrices
/// without a blocked kernel.
pub(crate) fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let real = &ar * &br - &ai * &bi;
    let imag = &ar * &bi + &ai * &br;
    real.zip_map(&imag, Complex64::new)
}

/// `X*X`.
pub(crate) fn gram(x: &CMatrix) -> CMatrix {
    cmul(&x.adjoint(), x)
}

/// `I − r² X* X`.
pub(crate) fn identity_minus_gram(x: &CMatrix, r: f64) -> CMatrix {
    let n = x.ncols();
    CMatrix::identity(n, n) - gram(x) * Complex64::new(r * r, 0.0)
}

pub(crate) fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_log_det_of_diagonal() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(4.0, 0.0),
        ]));
        let x = hpd_solve(a.clone(), &unit(2, 1)).unwrap();
        assert!((x[1].re - 0.25).abs() < 1e-15);
        assert!((hpd_log_det(a).unwrap() - 8f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]));
        assert!(hpd_solve(a, &unit(2, 0)).is_none());
    }

    #[test]
    fn gram_matches_direct_product() {
        let x = CMatrix::from_fn(5, 3, |i, j| {
            Complex64::new(i as f64 - j as f64, (i * j) as f64 * 0.5)
        });
        let direct = x.adjoint() * &x;
        assert!(frobenius(&(gram(&x) - direct)) < 1e-12);
    }

    #[test]
    fn sigma_max_of_rank_one() {
        let u = CVector::from_vec(vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)]);
        let a = &u * u.adjoint();
        assert!((sigma_max(&a) - 25.0).abs() < 1e-12);
    }
}
