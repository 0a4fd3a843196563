//! Dense complex linear algebra helpers shared across the crate.
//!
//! Everything here is a thin layer over `nalgebra`: Hermitian
//! eigendecompositions, the operator norm through the Gram matrix, and the
//! matrix exponential. Dimensions stay at desk scale (at most a few hundred),
//! so the pure-Rust routines are plenty and keep results deterministic.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Complex double-precision scalar used everywhere.
pub type C64 = Complex64;

/// Dense complex matrix type used everywhere.
pub type CMatrix = DMatrix<C64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Conjugate transpose.
pub fn adjoint(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// Largest absolute entry; zero matrix gives 0.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Hermiticity defect `max |M - M†|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order with matching orthonormal
/// eigenvector columns. The input is symmetrized first so tiny Hermiticity
/// defects from round-off do not poison the decomposition.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "eigh requires a square matrix");
    let sym = (m + m.adjoint()).scale(0.5);
    let decomp = sym.symmetric_eigen();
    // nalgebra returns eigenvalues unordered; sort ascending for stable output.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        decomp.eigenvalues[i]
            .partial_cmp(&decomp.eigenvalues[j])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &decomp.eigenvectors.column(src));
    }
    (eigenvalues, vectors)
}

/// Largest singular value, computed as the square root of the top eigenvalue
/// of the Gram matrix `M†M`.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let (eigenvalues, _) = eigh(&gram);
    eigenvalues.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Matrix exponential `exp(M)` (scaling-and-squaring Padé).
pub fn expm(m: &CMatrix) -> CMatrix {
    m.clone().exp()
}

/// `exp(i s H)` for Hermitian `H`, evaluated through the eigendecomposition.
///
/// Used as the unitary-conjugation route for dynamics; its unitarity is exact
/// up to the accuracy of the eigenbasis.
pub fn exp_i_hermitian(h: &CMatrix, s: f64) -> CMatrix {
    let (values, vectors) = eigh(h);
    let n = h.nrows();
    let mut phases = CMatrix::zeros(n, n);
    for (k, &lambda) in values.iter().enumerate() {
        phases[(k, k)] = (C64::i() * lambda * s).exp();
    }
    &vectors * phases * vectors.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigh_recovers_pauli_y_spectrum() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let (vals, vecs) = eigh(&m);
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-12);
        // Reconstruct.
        let mut d = CMatrix::zeros(2, 2);
        d[(0, 0)] = c(vals[0], 0.0);
        d[(1, 1)] = c(vals[1], 0.0);
        let recon = &vecs * d * vecs.adjoint();
        assert!(max_abs(&(recon - m)) < 1e-12);
    }

    #[test]
    fn operator_norm_of_isometry_block() {
        // Nilpotent matrix unit has norm 1.
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0); 2][..].repeat(2).as_slice());
        let mut m = m;
        m[(1, 0)] = c(1.0, 0.0);
        assert_abs_diff_eq!(operator_norm(&m), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn expm_matches_exp_i_hermitian() {
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.0), c(0.1, -0.7), c(0.1, 0.7), c(-0.2, 0.0)],
        );
        let s = 0.83;
        let via_pade = expm(&(&h * c(0.0, s)));
        let via_eigen = exp_i_hermitian(&h, s);
        assert!(max_abs(&(via_pade - via_eigen)) < 1e-12);
    }
}
