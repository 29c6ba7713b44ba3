use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::symbolic::CMatrix;

const MAX_SWEEPS: usize = 10_000;

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n == 1 {
        return Ok(vec![m[(0, 0)].re]);
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, MAX_SWEEPS)
        .ok_or(Error::EigenNonConvergence(n))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Smallest adjacent difference of a sorted list; `inf` for one value.
pub fn min_gap(sorted: &[f64]) -> f64 {
    sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Sizes of runs of eigenvalues closer than `tol`, largest first.
pub fn multiplicity_pattern(sorted: &[f64], tol: f64) -> Vec<usize> {
    let mut out = vec![];
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[1] - w[0] < tol {
            run += 1;
        } else {
            out.push(run);
            run = 1;
        }
    }
    if !sorted.is_empty() {
        out.push(run);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Largest entry of `|M − M*|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise distance between two sorted spectra of equal length.
pub fn spectrum_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn pauli_y_spectrum() {
        let i = Complex64::new(0.0, 1.0);
        let m = CMatrix::from_row_slice(2, 2, &[0.0.into(), -i, i, 0.0.into()]);
        let e = hermitian_eigenvalues(&m).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        assert_eq!(min_gap(&e), e[1] - e[0]);
    }

    #[test]
    fn patterns() {
        assert_eq!(multiplicity_pattern(&[0.0, 0.0, 0.0, 1.0], 1e-9), vec![3, 1]);
        assert_eq!(multiplicity_pattern(&[0.0, 0.0, 1.0, 1.0], 1e-9), vec![2, 2]);
        assert_eq!(multiplicity_pattern(&[0.0, 1.0], 1e-9), vec![1, 1]);
    }
}
