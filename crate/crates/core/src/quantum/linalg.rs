//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0), -I, I, c(0.0)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && (m - m.adjoint()).iter().all(|z| z.norm() <= tol)
}

/// Eigenvalues and eigenvectors (columns) of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (DVector<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    (eig.eigenvalues, eig.eigenvectors)
}

/// Zeroes eigenvalues that sit at the rounding-noise level of the decomposition, so that
/// their square roots do not leak ~1e-8 contributions into traces.
pub(crate) fn clip_eigen_noise(values: &mut DVector<f64>) {
    let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let floor = values.len() as f64 * 1e-15 * scale;
    values
        .iter_mut()
        .filter(|v| v.abs() < floor)
        .for_each(|v| *v = 0.0);
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues down to `-tol` are clipped to zero; anything more negative is an error.
pub fn psd_sqrt(m: &CMatrix, tol: f64) -> Result<CMatrix> {
    let (mut values, vectors) = hermitian_eigen(m);
    if let Some(v) = values.iter().find(|v| **v < -tol) {
        return Err(Error::Evaluation(format!(
            "matrix is not positive semidefinite (eigenvalue {v:e})"
        )));
    }
    clip_eigen_noise(&mut values);
    let roots = DVector::from_iterator(values.len(), values.iter().map(|v| c(v.max(0.0).sqrt())));
    Ok(&vectors * CMatrix::from_diagonal(&roots) * vectors.adjoint())
}

/// A state vector. Initial and target states are normalized; propagated ones may drift.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: CVector,
}

impl QuantumState {
    pub fn new(amplitudes: CVector) -> Self {
        Self { amplitudes }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(CVector::from_iterator(
            values.len(),
            values.iter().map(|v| c(*v)),
        ))
    }

    /// The computational basis state `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = CVector::zeros(dim);
        v[index] = c(1.0);
        Self::new(v)
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Evaluation(format!(
                "cannot normalize a state of norm {n}"
            )));
        }
        Ok(Self::new(self.amplitudes.unscale(n)))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Self {
        Self { entries }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_state(psi: &QuantumState) -> Self {
        let a = psi.amplitudes();
        Self::new(a * a.adjoint())
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn eigenvalues(&self) -> DVector<f64> {
        hermitian_eigen(&self.entries).0
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn is_valid(&self, tol: f64) -> bool {
        is_hermitian(&self.entries, tol)
            && (self.trace() - c(1.0)).norm() <= tol
            && self.eigenvalues().iter().all(|v| *v >= -tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products() {
        let zz = kron(&pauli_z(), &pauli_z());
        let diag: Vec<f64> = (0..4).map(|i| zz[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);

        let yy = kron(&pauli_y(), &pauli_y());
        let out = &yy * QuantumState::basis(4, 0).amplitudes();
        let want = QuantumState::from_real(&[0.0, 0.0, 0.0, -1.0]);
        assert!((out - want.amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn density_from_state_examples() {
        let rho = DensityMatrix::from_state(&QuantumState::from_real(&[1.0, 0.0]));
        assert_eq!(rho.entries()[(0, 0)], c(1.0));
        assert_eq!(rho.entries()[(1, 1)], c(0.0));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::from_state(&QuantumState::from_real(&[s, s]));
        assert!(rho.entries().iter().all(|z| (z - c(0.5)).norm() < 1e-15));

        let psi = QuantumState::new(CVector::from_vec(vec![Complex64::new(1.0, 2.0), c(-0.5)]));
        let rho = DensityMatrix::from_state(&psi);
        assert!((rho.trace().re - psi.norm().powi(2)).abs() < 1e-12);
        assert!(is_hermitian(rho.entries(), 1e-15));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = QuantumState::new(CVector::from_vec(vec![c(s), Complex64::new(0.0, s)]));
        let rho = DensityMatrix::from_state(&psi).entries().scale(0.6)
            + CMatrix::identity(2, 2).scale(0.2);
        let r = psd_sqrt(&rho, 1e-12).unwrap();
        assert!((&r * &r - &rho).norm() < 1e-12);
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        assert!(psd_sqrt(&pauli_z(), 1e-10).is_err());
    }

    #[test]
    fn zero_state_cannot_normalize() {
        assert!(QuantumState::from_real(&[0.0, 0.0]).normalized().is_err());
    }
}
